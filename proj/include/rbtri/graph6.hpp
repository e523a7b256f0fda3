#pragma once

#include <rbtri/graph.hpp>

#include <string>
#include <string_view>

namespace rbtri
{
    /// graph6 encoding (no header, no trailing newline).
    auto to_graph6(const Graph & g) -> std::string;

    /// Decodes one graph6 line. An optional ">>graph6<<" header and trailing
    /// whitespace are accepted.
    auto from_graph6(std::string_view line) -> Graph;

    /// Plain adjacency text: first token n, then "u v" pairs, 0-based.
    auto to_edge_list_text(const Graph & g) -> std::string;
    auto from_edge_list_text(std::string_view text) -> Graph;

    /// Accepts either graph6 or the plain adjacency text.
    auto parse_graph(std::string_view text) -> Graph;
}
