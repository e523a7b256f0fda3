#include <rbtri/graph.hpp>

#include <algorithm>
#include <string>

namespace rbtri
{
    auto vertex_set(std::initializer_list<int> vs) -> VertexSet
    {
        VertexSet s = 0;
        for (int v : vs)
            s |= bit(v);
        return s;
    }

    auto vertices_of(VertexSet s) -> std::vector<int>
    {
        std::vector<int> result;
        for (; s; s &= s - 1)
            result.push_back(lowest(s));
        return result;
    }

    auto make_edge(int a, int b) -> Edge
    {
        if (a == b)
            throw InvalidArgument("loop at vertex " + std::to_string(a));
        return a < b ? Edge{a, b} : Edge{b, a};
    }

    Graph::Graph(int n) :
        _n(n)
    {
        if (n < 0 || n > max_order)
            throw InvalidArgument("graph order must be in 0.." + std::to_string(max_order) + ", got " + std::to_string(n));
        _adj.assign(n, 0);
        _index.assign(static_cast<std::size_t>(n) * n, -1);
    }

    Graph::Graph(int n, std::span<const Edge> edges) :
        Graph(n)
    {
        for (auto e : edges) {
            check_vertex(e.u);
            check_vertex(e.v);
            if (e.u == e.v)
                throw InvalidArgument("loop at vertex " + std::to_string(e.u));
            _adj[e.u] |= bit(e.v);
            _adj[e.v] |= bit(e.u);
        }
        for (int u = 0; u < n; ++u)
            for (VertexSet later = _adj[u] & ~((bit(u) << 1) - 1); later; later &= later - 1) {
                int v = lowest(later);
                auto idx = static_cast<std::int16_t>(_edges.size());
                _index[u * n + v] = idx;
                _index[v * n + u] = idx;
                _edges.push_back({u, v});
            }
    }

    void Graph::check_vertex(int v) const
    {
        if (v < 0 || v >= _n)
            throw InvalidVertex("vertex " + std::to_string(v) + " out of range 0.." + std::to_string(_n - 1));
    }

    auto Graph::adjacent(int u, int v) const -> bool
    {
        check_vertex(u);
        check_vertex(v);
        return _adj[u] & bit(v);
    }

    auto Graph::neighbours(int v) const -> VertexSet
    {
        check_vertex(v);
        return _adj[v];
    }

    auto Graph::degree(int v) const -> int
    {
        return popcount(neighbours(v));
    }

    auto Graph::min_degree() const -> int
    {
        int best = _n;
        for (auto a : _adj)
            best = std::min(best, popcount(a));
        return best;
    }

    auto Graph::all_vertices() const -> VertexSet
    {
        return _n == 64 ? ~VertexSet{0} : bit(_n) - 1;
    }

    auto Graph::edge_index(int u, int v) const -> int
    {
        check_vertex(u);
        check_vertex(v);
        return _index[u * _n + v];
    }

    auto Graph::without_vertex(int v) const -> Graph
    {
        check_vertex(v);
        return induced_subgraph(*this, all_vertices() & ~bit(v)).graph;
    }

    auto Graph::without_edge_indices(std::span<const int> indices) const -> Graph
    {
        std::vector<bool> drop(_edges.size(), false);
        for (int i : indices)
            drop.at(i) = true;
        std::vector<Edge> kept;
        for (std::size_t i = 0; i < _edges.size(); ++i)
            if (! drop[i])
                kept.push_back(_edges[i]);
        return Graph(_n, kept);
    }

    auto complete_graph(int n) -> Graph
    {
        std::vector<Edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                es.push_back({u, v});
        return Graph(n, es);
    }

    auto cycle_graph(int n) -> Graph
    {
        std::vector<Edge> es;
        for (int i = 0; i < n; ++i)
            es.push_back(make_edge(i, (i + 1) % n));
        return Graph(n, es);
    }

    auto path_graph(int n) -> Graph
    {
        std::vector<Edge> es;
        for (int i = 0; i + 1 < n; ++i)
            es.push_back({i, i + 1});
        return Graph(n, es);
    }

    auto star_graph(int leaves) -> Graph
    {
        std::vector<Edge> es;
        for (int i = 1; i <= leaves; ++i)
            es.push_back({0, i});
        return Graph(leaves + 1, es);
    }

    auto complete_bipartite_graph(int a, int b) -> Graph
    {
        std::vector<Edge> es;
        for (int u = 0; u < a; ++u)
            for (int v = a; v < a + b; ++v)
                es.push_back({u, v});
        return Graph(a + b, es);
    }

    auto octahedron() -> Graph
    {
        // antipodal pairs are (0,5), (1,3), (2,4)
        std::vector<Edge> es;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v)
                if (! (u == 0 && v == 5) && ! (u == 1 && v == 3) && ! (u == 2 && v == 4))
                    es.push_back({u, v});
        return Graph(6, es);
    }

    auto spanning_subgraph(const Graph & g, std::uint64_t edge_mask) -> Graph
    {
        if (g.size() > 64)
            throw InvalidArgument("edge masks need at most 64 edges");
        std::vector<Edge> kept;
        for (int i = 0; i < g.size(); ++i)
            if (edge_mask >> i & 1)
                kept.push_back(g.edge(i));
        return Graph(g.order(), kept);
    }

    auto induced_subgraph(const Graph & g, VertexSet x) -> InducedSubgraph
    {
        if (x & ~g.all_vertices())
            throw InvalidVertex("vertex " + std::to_string(lowest(x & ~g.all_vertices())) + " is not in the graph");
        InducedSubgraph result;
        result.labels = vertices_of(x);
        std::vector<int> relabel(g.order(), -1);
        for (std::size_t i = 0; i < result.labels.size(); ++i)
            relabel[result.labels[i]] = static_cast<int>(i);
        std::vector<Edge> es;
        for (auto e : g.edges())
            if (relabel[e.u] >= 0 && relabel[e.v] >= 0)
                es.push_back(make_edge(relabel[e.u], relabel[e.v]));
        result.graph = Graph(static_cast<int>(result.labels.size()), es);
        return result;
    }

    auto cross_edges(const Graph & g, VertexSet x, VertexSet y) -> EdgeSet
    {
        if (x & y)
            throw InvalidArgument("cross_edges needs disjoint vertex sets");
        EdgeSet result;
        for (auto e : g.edges())
            if (((x & bit(e.u)) && (y & bit(e.v))) || ((y & bit(e.u)) && (x & bit(e.v))))
                result.push_back(e);
        return result;
    }

    auto internal_edges(const Graph & g, VertexSet x) -> EdgeSet
    {
        EdgeSet result;
        for (auto e : g.edges())
            if ((x & e.mask()) == e.mask())
                result.push_back(e);
        return result;
    }

    auto components(const Graph & g, VertexSet within) -> std::vector<VertexSet>
    {
        std::vector<VertexSet> result;
        VertexSet left = within & g.all_vertices();
        while (left) {
            VertexSet comp = bit(lowest(left)), frontier = comp;
            while (frontier) {
                VertexSet next = 0;
                for (VertexSet f = frontier; f; f &= f - 1)
                    next |= g.neighbours(lowest(f));
                next &= left & ~comp;
                comp |= next;
                frontier = next;
            }
            result.push_back(comp);
            left &= ~comp;
        }
        return result;
    }

    auto components(const Graph & g) -> std::vector<VertexSet>
    {
        return components(g, g.all_vertices());
    }

    auto is_connected_within(const Graph & g, VertexSet within) -> bool
    {
        return components(g, within).size() <= 1;
    }

    auto is_connected(const Graph & g) -> bool
    {
        return is_connected_within(g, g.all_vertices());
    }

    namespace
    {
        auto has_cut_of_size(const Graph & g, int size, int from, VertexSet cut) -> bool
        {
            if (size == 0)
                return ! is_connected_within(g, g.all_vertices() & ~cut);
            for (int v = from; v <= g.order() - size; ++v)
                if (has_cut_of_size(g, size - 1, v + 1, cut | bit(v)))
                    return true;
            return false;
        }
    }

    auto vertex_connectivity(const Graph & g) -> int
    {
        int n = g.order();
        if (n <= 1)
            return 0;
        if (! is_connected(g))
            return 0;
        for (int s = 1; s <= std::min(5, n - 2); ++s)
            if (has_cut_of_size(g, s, 0, 0))
                return s;
        // no cut of size <= min(5, n-2): either complete, or kappa >= 6
        if (n - 2 <= 5)
            return n - 1;
        return 6;
    }

    namespace
    {
        struct HamiltonSearch
        {
            const Graph & g;
            std::vector<int> path;
            VertexSet visited = 0;

            auto extend() -> bool
            {
                int n = g.order();
                int last = path.back();
                if (static_cast<int>(path.size()) == n)
                    return g.adjacent(last, path.front());

                VertexSet unvisited = g.all_vertices() & ~visited;
                // every unvisited vertex needs two usable neighbours (path ends count)
                VertexSet ends = bit(last) | bit(path.front());
                for (VertexSet u = unvisited; u; u &= u - 1) {
                    int w = lowest(u);
                    if (popcount(g.neighbours(w) & (unvisited | ends)) < 2)
                        return false;
                }

                for (VertexSet cand = g.neighbours(last) & unvisited; cand; cand &= cand - 1) {
                    int w = lowest(cand);
                    path.push_back(w);
                    visited |= bit(w);
                    if (extend())
                        return true;
                    visited &= ~bit(w);
                    path.pop_back();
                }
                return false;
            }
        };
    }

    auto hamiltonian_cycle(const Graph & g) -> std::optional<std::vector<int>>
    {
        int n = g.order();
        if (n < 3 || g.min_degree() < 2)
            return std::nullopt;
        HamiltonSearch search{g, {0}, bit(0)};
        if (! search.extend())
            return std::nullopt;

        auto & cycle = search.path;
        VertexSet seen = 0;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            if (seen & bit(cycle[i]) || ! g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()]))
                throw Error("internal error: Hamiltonian witness failed re-verification");
            seen |= bit(cycle[i]);
        }
        return cycle;
    }

    auto is_hamiltonian(const Graph & g) -> bool
    {
        return hamiltonian_cycle(g).has_value();
    }

    auto odd_components(const Graph & g, VertexSet s) -> ComponentSplit
    {
        if (s & ~g.all_vertices())
            throw InvalidVertex("vertex " + std::to_string(lowest(s & ~g.all_vertices())) + " is not in the graph");
        ComponentSplit result;
        for (auto c : components(g, g.all_vertices() & ~s))
            (popcount(c) % 2 ? result.odd : result.even).push_back(c);
        std::stable_sort(result.odd.begin(), result.odd.end(), [](VertexSet a, VertexSet b) {
            if (popcount(a) != popcount(b))
                return popcount(a) > popcount(b);
            return lowest(a) < lowest(b);
        });
        return result;
    }

    auto check_minor_witness(const Graph & g, const MinorWitness & w) -> bool
    {
        std::array<VertexSet, 6> parts{w.left[0], w.left[1], w.left[2], w.right[0], w.right[1], w.right[2]};
        VertexSet seen = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (! parts[i])
                throw InvalidWitness("part " + std::to_string(i) + " is empty");
            if (parts[i] & seen)
                throw InvalidWitness("part " + std::to_string(i) + " overlaps an earlier part");
            seen |= parts[i];
        }

        // a part reaching outside V(G) cannot be a branch set of G
        if (seen & ~g.all_vertices())
            return false;

        for (auto p : parts)
            if (! is_connected_within(g, p))
                return false;

        for (auto l : w.left)
            for (auto r : w.right) {
                bool joined = false;
                for (VertexSet x = l; x && ! joined; x &= x - 1)
                    joined = g.neighbours(lowest(x)) & r;
                if (! joined)
                    return false;
            }
        return true;
    }
}
