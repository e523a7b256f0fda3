#pragma once

#include <rbtri/errors.hpp>

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rbtri
{
    /// Vertex subsets are 64-bit masks; graphs never exceed 64 vertices.
    using VertexSet = std::uint64_t;

    inline constexpr int max_order = 64;

    inline auto bit(int v) -> VertexSet
    {
        return VertexSet{1} << v;
    }

    inline auto popcount(VertexSet s) -> int
    {
        return std::popcount(s);
    }

    inline auto lowest(VertexSet s) -> int
    {
        return std::countr_zero(s);
    }

    auto vertex_set(std::initializer_list<int> vs) -> VertexSet;
    auto vertices_of(VertexSet s) -> std::vector<int>;

    /// Undirected edge with u < v. Ordering is lexicographic on (u, v), which
    /// is the global edge order used by every search and certificate.
    struct Edge
    {
        int u = 0;
        int v = 0;

        auto operator<=>(const Edge &) const = default;

        auto mask() const -> VertexSet
        {
            return bit(u) | bit(v);
        }
    };

    auto make_edge(int a, int b) -> Edge;

    /// Sorted, duplicate-free list of edges.
    using EdgeSet = std::vector<Edge>;

    /// Simple undirected graph on vertices 0..n-1. Immutable once built.
    class Graph
    {
    public:
        Graph() = default;
        explicit Graph(int n);
        Graph(int n, std::span<const Edge> edges);

        auto order() const -> int { return _n; }
        auto size() const -> int { return static_cast<int>(_edges.size()); }

        auto adjacent(int u, int v) const -> bool;
        auto neighbours(int v) const -> VertexSet;
        auto degree(int v) const -> int;
        auto min_degree() const -> int;
        auto all_vertices() const -> VertexSet;

        /// Edges in lexicographic order.
        auto edges() const -> const std::vector<Edge> & { return _edges; }
        auto edge(int index) const -> const Edge & { return _edges[index]; }

        /// Position of uv in edges(), or -1.
        auto edge_index(int u, int v) const -> int;

        auto without_vertex(int v) const -> Graph;
        auto without_edge_indices(std::span<const int> indices) const -> Graph;

        auto operator==(const Graph & other) const -> bool
        {
            return _n == other._n && _edges == other._edges;
        }

    private:
        void check_vertex(int v) const;

        int _n = 0;
        std::vector<VertexSet> _adj;
        std::vector<Edge> _edges;
        std::vector<std::int16_t> _index;
    };

    auto complete_graph(int n) -> Graph;
    auto cycle_graph(int n) -> Graph;
    auto path_graph(int n) -> Graph;
    auto star_graph(int leaves) -> Graph;
    auto complete_bipartite_graph(int a, int b) -> Graph;
    auto octahedron() -> Graph;

    /// Spanning subgraph keeping the edges whose indices are set in mask
    /// (host must have at most 64 edges).
    auto spanning_subgraph(const Graph & g, std::uint64_t edge_mask) -> Graph;

    struct InducedSubgraph
    {
        Graph graph;
        /// new label -> original label
        std::vector<int> labels;
    };

    auto induced_subgraph(const Graph & g, VertexSet x) -> InducedSubgraph;

    /// E_G(X,Y) for disjoint X and Y.
    auto cross_edges(const Graph & g, VertexSet x, VertexSet y) -> EdgeSet;

    /// E_G(X): edges with both ends in X.
    auto internal_edges(const Graph & g, VertexSet x) -> EdgeSet;

    /// Connected components of G[within], each as a vertex set, ordered by
    /// smallest member.
    auto components(const Graph & g, VertexSet within) -> std::vector<VertexSet>;
    auto components(const Graph & g) -> std::vector<VertexSet>;
    auto is_connected(const Graph & g) -> bool;
    auto is_connected_within(const Graph & g, VertexSet within) -> bool;

    /// min(kappa(G), 6); complete graphs report n-1. Disconnected graphs give 0.
    auto vertex_connectivity(const Graph & g) -> int;

    /// A Hamiltonian cycle as a vertex sequence, if one exists.
    auto hamiltonian_cycle(const Graph & g) -> std::optional<std::vector<int>>;
    auto is_hamiltonian(const Graph & g) -> bool;

    struct ComponentSplit
    {
        /// Odd-order components: size descending, ties by smallest label.
        std::vector<VertexSet> odd;
        std::vector<VertexSet> even;

        auto odd_count() const -> int { return static_cast<int>(odd.size()); }
    };

    auto odd_components(const Graph & g, VertexSet s) -> ComponentSplit;

    /// Branch sets of a claimed K_{3,3} minor.
    struct MinorWitness
    {
        std::array<VertexSet, 3> left{};
        std::array<VertexSet, 3> right{};
    };

    /// Validates the witness shape (throws InvalidWitness on empty or
    /// overlapping parts), then returns whether every part is connected and
    /// all nine left/right pairs are joined by an edge.
    auto check_minor_witness(const Graph & g, const MinorWitness & w) -> bool;
}
