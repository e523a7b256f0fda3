#pragma once

#include <rbtri/graph.hpp>

#include <optional>
#include <span>
#include <vector>

namespace rbtri
{
    struct Matching
    {
        /// Sorted in the global edge order.
        std::vector<Edge> edges;

        auto size() const -> int { return static_cast<int>(edges.size()); }
        auto vertices() const -> VertexSet;
    };

    auto is_matching(const Graph & g, std::span<const Edge> edges) -> bool;

    /// Size of a maximum matching (Edmonds' blossom algorithm).
    auto matching_number(const Graph & g) -> int;

    /// The lexicographically smallest maximum matching in the global edge order.
    auto max_matching(const Graph & g) -> Matching;

    auto has_perfect_matching(const Graph & g) -> bool;
    auto is_factor_critical(const Graph & g) -> bool;

    /// Gallai-Edmonds witness for the Berge-Tutte formula.
    struct BergeTutteDecomposition
    {
        VertexSet s = 0;
        /// odd components of G - S, size descending then smallest label
        std::vector<VertexSet> odd_components;
        /// union of the even components of G - S
        VertexSet even_vertices = 0;
        int q = 0;
        /// 0-based index of the first singleton odd component, if any
        std::optional<int> first_singleton;
        /// the vertex of each singleton odd component, in component order
        std::vector<int> singletons;
        int deficiency = 0;
        int matching_size = 0;
    };

    auto berge_tutte_witness(const Graph & g) -> BergeTutteDecomposition;
}
