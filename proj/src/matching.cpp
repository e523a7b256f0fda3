#include <rbtri/matching.hpp>

#include <algorithm>
#include <numeric>
#include <queue>

namespace rbtri
{
    auto Matching::vertices() const -> VertexSet
    {
        VertexSet s = 0;
        for (auto e : edges)
            s |= e.mask();
        return s;
    }

    auto is_matching(const Graph & g, std::span<const Edge> edges) -> bool
    {
        VertexSet used = 0;
        for (auto e : edges) {
            if (e.u < 0 || e.v >= g.order() || e.u >= e.v || ! g.adjacent(e.u, e.v) || (used & e.mask()))
                return false;
            used |= e.mask();
        }
        return true;
    }

    namespace
    {
        /// Edmonds' algorithm with explicit blossom bases, O(n^3).
        class Blossom
        {
        public:
            explicit Blossom(const Graph & g) :
                _g(g), _n(g.order()), _mate(_n, -1), _parent(_n), _base(_n), _in_queue(_n), _in_blossom(_n)
            {
            }

            auto run() -> std::vector<int>
            {
                // greedy start
                for (auto e : _g.edges())
                    if (_mate[e.u] == -1 && _mate[e.v] == -1) {
                        _mate[e.u] = e.v;
                        _mate[e.v] = e.u;
                    }
                for (int root = 0; root < _n; ++root)
                    if (_mate[root] == -1) {
                        int v = find_path(root);
                        while (v != -1) {
                            int pv = _parent[v], ppv = _mate[pv];
                            _mate[v] = pv;
                            _mate[pv] = v;
                            v = ppv;
                        }
                    }
                return _mate;
            }

        private:
            auto lca(int a, int b) -> int
            {
                std::vector<bool> used(_n, false);
                while (true) {
                    a = _base[a];
                    used[a] = true;
                    if (_mate[a] == -1)
                        break;
                    a = _parent[_mate[a]];
                }
                while (true) {
                    b = _base[b];
                    if (used[b])
                        return b;
                    b = _parent[_mate[b]];
                }
            }

            void mark_path(int v, int b, int child)
            {
                while (_base[v] != b) {
                    _in_blossom[_base[v]] = _in_blossom[_base[_mate[v]]] = true;
                    _parent[v] = child;
                    child = _mate[v];
                    v = _parent[_mate[v]];
                }
            }

            auto find_path(int root) -> int
            {
                std::fill(_parent.begin(), _parent.end(), -1);
                std::iota(_base.begin(), _base.end(), 0);
                std::fill(_in_queue.begin(), _in_queue.end(), false);

                std::queue<int> q;
                q.push(root);
                _in_queue[root] = true;
                while (! q.empty()) {
                    int v = q.front();
                    q.pop();
                    for (VertexSet nb = _g.neighbours(v); nb; nb &= nb - 1) {
                        int to = lowest(nb);
                        if (_base[v] == _base[to] || _mate[v] == to)
                            continue;
                        if (to == root || (_mate[to] != -1 && _parent[_mate[to]] != -1)) {
                            int cur = lca(v, to);
                            std::fill(_in_blossom.begin(), _in_blossom.end(), false);
                            mark_path(v, cur, to);
                            mark_path(to, cur, v);
                            for (int i = 0; i < _n; ++i)
                                if (_in_blossom[_base[i]]) {
                                    _base[i] = cur;
                                    if (! _in_queue[i]) {
                                        _in_queue[i] = true;
                                        q.push(i);
                                    }
                                }
                        }
                        else if (_parent[to] == -1) {
                            _parent[to] = v;
                            if (_mate[to] == -1)
                                return to;
                            _in_queue[_mate[to]] = true;
                            q.push(_mate[to]);
                        }
                    }
                }
                return -1;
            }

            const Graph & _g;
            int _n;
            std::vector<int> _mate, _parent, _base;
            std::vector<bool> _in_queue, _in_blossom;
        };
    }

    auto matching_number(const Graph & g) -> int
    {
        auto mate = Blossom(g).run();
        int matched = 0;
        for (int m : mate)
            matched += m != -1;
        return matched / 2;
    }

    auto max_matching(const Graph & g) -> Matching
    {
        int target = matching_number(g);
        Matching result;
        VertexSet used = 0;
        // greedily take each edge if the rest can still be completed using later edges only
        for (int i = 0; i < g.size() && result.size() < target; ++i) {
            auto e = g.edge(i);
            if (used & e.mask())
                continue;
            VertexSet blocked = used | e.mask();
            std::vector<Edge> later;
            for (int j = i + 1; j < g.size(); ++j)
                if (! (g.edge(j).mask() & blocked))
                    later.push_back(g.edge(j));
            if (result.size() + 1 + matching_number(Graph(g.order(), later)) == target) {
                result.edges.push_back(e);
                used = blocked;
            }
        }
        if (result.size() != target || ! is_matching(g, result.edges))
            throw Error("internal error: lexicographic matching construction failed");
        return result;
    }

    auto has_perfect_matching(const Graph & g) -> bool
    {
        return g.order() % 2 == 0 && 2 * matching_number(g) == g.order();
    }

    auto is_factor_critical(const Graph & g) -> bool
    {
        if (g.order() % 2 == 0)
            return false;
        for (int v = 0; v < g.order(); ++v)
            if (! has_perfect_matching(g.without_vertex(v)))
                return false;
        return true;
    }

    auto berge_tutte_witness(const Graph & g) -> BergeTutteDecomposition
    {
        int n = g.order();
        int d = matching_number(g);

        // D: vertices missed by some maximum matching
        VertexSet missable = 0;
        for (int v = 0; v < n; ++v)
            if (matching_number(g.without_vertex(v)) == d)
                missable |= bit(v);
        VertexSet a = 0;
        for (VertexSet x = missable; x; x &= x - 1)
            a |= g.neighbours(lowest(x));
        a &= ~missable;

        BergeTutteDecomposition result;
        result.s = a;
        result.matching_size = d;
        auto split = odd_components(g, a);
        result.odd_components = split.odd;
        for (auto c : split.even)
            result.even_vertices |= c;
        result.q = split.odd_count();
        for (int i = 0; i < result.q; ++i)
            if (popcount(result.odd_components[i]) == 1) {
                if (! result.first_singleton)
                    result.first_singleton = i;
                result.singletons.push_back(lowest(result.odd_components[i]));
            }
        result.deficiency = result.q - popcount(a);

        if (2 * d != n - result.deficiency || popcount(a) > d)
            throw Error("internal error: Gallai-Edmonds set violates the Berge-Tutte formula");
        return result;
    }
}
