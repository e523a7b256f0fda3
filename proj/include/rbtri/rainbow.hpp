#pragma once

#include <rbtri/graph.hpp>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rbtri
{
    /// Total, surjective edge colouring with colours 1..c, indexed by the
    /// host's global edge order.
    class EdgeColoring
    {
    public:
        EdgeColoring(Graph host, std::vector<int> colors);

        static auto all_distinct(const Graph & host) -> EdgeColoring;
        static auto monochromatic(const Graph & host) -> EdgeColoring;

        auto host() const -> const Graph & { return _host; }
        auto num_colors() const -> int { return _num_colors; }
        auto color_of(int edge_index) const -> int { return _colors.at(edge_index); }
        auto colors() const -> std::span<const int> { return _colors; }

        /// Edge indices of each colour class; classes()[c - 1] is colour c.
        auto classes() const -> std::vector<std::vector<int>>;

        /// Restricted growth form: colours renumbered by first occurrence.
        auto canonical() const -> EdgeColoring;

        /// Colour b folded into colour a; remaining colours stay contiguous.
        auto merge(int a, int b) const -> EdgeColoring;

        auto operator==(const EdgeColoring & other) const -> bool
        {
            return _host == other._host && _colors == other._colors;
        }

    private:
        Graph _host;
        std::vector<int> _colors;
        int _num_colors = 0;
    };

    struct RainbowMatching
    {
        int size = 0;
        std::vector<Edge> witness;
    };

    auto max_rainbow_matching(const EdgeColoring & col) -> RainbowMatching;

    /// First rainbow matching of size k found, if any. k >= 1.
    auto find_rainbow_matching(const EdgeColoring & col, int k) -> std::optional<std::vector<Edge>>;
    auto has_rainbow_matching(const EdgeColoring & col, int k) -> bool;

    /// Chooses one edge index from a colour class (given in edge order).
    using Picker = std::function<int(int color, std::span<const int> class_edges)>;

    auto smallest_edge_picker() -> Picker;

    /// Spanning subgraph with exactly one edge per colour class.
    auto representative_subgraph(const EdgeColoring & col, const Picker & picker = smallest_edge_picker()) -> Graph;

    /// Witness that a colouring of `graph` has no rainbow kK2.
    struct RainbowCertificate
    {
        Graph graph;
        EdgeColoring coloring;
        int k = 0;

        auto colors() const -> int { return coloring.num_colors(); }
        static constexpr const char * verdict = "no_rainbow_kK2";
    };

    /// True iff the certificate's colouring avoids a rainbow kK2. Throws
    /// InvalidCertificate when the package is inconsistent.
    auto verify_no_rainbow(const RainbowCertificate & cert) -> bool;

    /// Coloring file: "c <num_colors>" then one "u v col" line per edge.
    auto write_coloring(const EdgeColoring & col) -> std::string;
    auto parse_coloring(const Graph & host, std::string_view text) -> EdgeColoring;

    /// Certificate JSON with an inline coloring.
    auto certificate_to_json(const RainbowCertificate & cert) -> std::string;

    /// Parses certificate JSON; a "coloring_path" entry is resolved relative
    /// to base_dir. Throws InvalidCertificate with the reason on failure.
    auto certificate_from_json(std::string_view json, const std::string & base_dir = ".") -> RainbowCertificate;
}
