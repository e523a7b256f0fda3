#include <rbtri/anti_ramsey.hpp>
#include <rbtri/graph6.hpp>
#include <rbtri/matching.hpp>

#include "search_core.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <unordered_set>

namespace rbtri
{
    using detail::EdgeMask;
    using detail::NodeCounter;
    using detail::OutOfNodes;

    auto engine_name(Engine e) -> std::string
    {
        switch (e) {
            case Engine::partition_dfs: return "partition_dfs";
            case Engine::representative_completion: return "representative_completion";
        }
        return "unknown";
    }

    auto parse_engine(std::string_view name) -> Engine
    {
        if (name == "partition_dfs" || name == "partition")
            return Engine::partition_dfs;
        if (name == "representative_completion" || name == "completion")
            return Engine::representative_completion;
        throw InvalidArgument("unknown engine '" + std::string(name) + "'");
    }

    namespace
    {
        struct Host
        {
            int n;
            int e;
            std::vector<VertexSet> masks;

            explicit Host(const Graph & g) :
                n(g.order()), e(g.size())
            {
                if (e > 64)
                    throw InvalidArgument("exhaustive colouring searches support at most 64 edges");
                for (auto & edge : g.edges())
                    masks.push_back(edge.mask());
            }

            auto all_edges() const -> EdgeMask
            {
                return e == 64 ? ~EdgeMask{0} : (EdgeMask{1} << e) - 1;
            }

            auto nu(EdgeMask subset) const -> int
            {
                return detail::small_matching_number(n, masks, subset);
            }
        };

        void check_k(int k)
        {
            if (k < 1)
                throw InvalidArgument("k must be at least 1");
        }

        /// 0-based class per edge -> surjective colouring in restricted growth form
        auto to_coloring(const Graph & g, std::span<const int> classes) -> EdgeColoring
        {
            std::vector<int> cs(classes.begin(), classes.end());
            for (auto & c : cs)
                ++c;
            return EdgeColoring(g, cs).canonical();
        }

        auto graph_id(const Graph & g) -> std::string
        {
            if (g.order() >= 4 && is_maximal_planar(g))
                return canonical_form(Triangulation::from_graph(g)).hex();
            return to_graph6(g);
        }

        auto certify(const Graph & g, const EdgeColoring & col, int k) -> RainbowCertificate
        {
            RainbowCertificate cert{g, col, k};
            if (! verify_no_rainbow(cert))
                throw Error("internal error: search produced a colouring with a rainbow matching");
            return cert;
        }

        /// Any colouring with exactly c colours, for hosts without a kK2.
        auto arbitrary_coloring(const Graph & g, int c) -> EdgeColoring
        {
            std::vector<int> cs(g.size());
            for (int i = 0; i < g.size(); ++i)
                cs[i] = std::min(i + 1, c);
            return EdgeColoring(g, cs);
        }

        class PartitionSearch
        {
        public:
            PartitionSearch(const Host & host, int k, NodeCounter & counter, int target) :
                _h(host), _k(k), _counter(counter), _target(target)
            {
            }

            void run()
            {
                search(0, 0);
            }

            int best = 0;
            bool found = false;
            std::vector<int> best_classes;

        private:
            void search(int i, int m)
            {
                _counter.tick();
                if (i == _h.e) {
                    if (_target ? m == _target : m > best) {
                        best = m;
                        found = true;
                        best_classes.assign(_cls.begin(), _cls.begin() + _h.e);
                    }
                    return;
                }
                int left = _h.e - i;
                if (_target ? m + left < _target : m + left <= best)
                    return;

                // a new class first, so large colourings surface early
                if (! _target || m < _target)
                    if (place(i, m, m + 1))
                        return;
                for (int j = 0; j < m; ++j)
                    if (place(i, j, m))
                        return;
            }

            /// returns true when the search should stop
            auto place(int i, int cls, int m) -> bool
            {
                // a new rainbow kK2 would have to use edge i
                if (detail::rainbow_extends(_masks.data(), _cls.data(), i, _k - 1, _h.masks[i], std::uint64_t{1} << cls))
                    return false;
                _masks[i] = _h.masks[i];
                _cls[i] = cls;
                search(i + 1, m);
                return _target && found;
            }

            const Host & _h;
            int _k;
            NodeCounter & _counter;
            int _target;
            std::array<VertexSet, 64> _masks{};
            std::array<int, 64> _cls{};
        };

        /// Decides whether an exactly-c colouring without rainbow kK2 exists.
        /// Each colouring is reached from exactly one R: its class minima.
        class CompletionSearch
        {
        public:
            CompletionSearch(const Host & host, int k, NodeCounter & counter, int c) :
                _h(host), _k(k), _counter(counter), _c(c)
            {
            }

            auto run() -> bool
            {
                if (_c > _h.e || _c < 1)
                    return false;
                return enumerate(0, 0, 0, 0);
            }

            std::vector<int> classes;

        private:
            auto enumerate(int i, EdgeMask r, int size, int nu) -> bool
            {
                _counter.tick();
                if (size == _c)
                    return complete_from(r);
                if (i == _h.e || size + (_h.e - i) < _c)
                    return false;

                EdgeMask with = r | (EdgeMask{1} << i);
                int nu_with = _h.nu(with);
                if (nu_with <= _k - 1 && enumerate(i + 1, with, size + 1, nu_with))
                    return true;
                // the smallest edge always represents its own class
                if (i > 0 && enumerate(i + 1, r, size, nu))
                    return true;
                return false;
            }

            auto complete_from(EdgeMask r) -> bool
            {
                int e = _h.e;
                std::array<int, 64> cls;
                cls.fill(-1);
                std::vector<int> reps;
                for (EdgeMask s = r; s; s &= s - 1) {
                    cls[lowest(s)] = static_cast<int>(reps.size());
                    reps.push_back(lowest(s));
                }

                // candidate classes for each non-representative edge
                _order.clear();
                std::array<std::vector<int>, 64> & cands = _cands;
                for (int x = 0; x < e; ++x) {
                    if (r >> x & 1)
                        continue;
                    cands[x].clear();
                    for (int j = 0; j < _c && reps[j] < x; ++j) {
                        EdgeMask swapped = (r & ~(EdgeMask{1} << reps[j])) | (EdgeMask{1} << x);
                        if (_h.nu(swapped) <= _k - 1)
                            cands[x].push_back(j);
                    }
                    if (cands[x].empty())
                        return false;
                    _order.push_back(x);
                }
                std::stable_sort(_order.begin(), _order.end(), [&](int a, int b) { return cands[a].size() < cands[b].size(); });

                _count = 0;
                for (int rep : reps) {
                    _masks[_count] = _h.masks[rep];
                    _cls[_count] = cls[rep];
                    ++_count;
                }
                _edge_cls = cls;
                if (! assign(0))
                    return false;
                classes.assign(_edge_cls.begin(), _edge_cls.begin() + e);
                return true;
            }

            auto assign(std::size_t pos) -> bool
            {
                _counter.tick();
                if (pos == _order.size())
                    return true;
                int x = _order[pos];
                for (int j : _cands[x]) {
                    if (detail::rainbow_extends(_masks.data(), _cls.data(), _count, _k - 1, _h.masks[x], std::uint64_t{1} << j))
                        continue;
                    _masks[_count] = _h.masks[x];
                    _cls[_count] = j;
                    ++_count;
                    _edge_cls[x] = j;
                    if (assign(pos + 1))
                        return true;
                    --_count;
                    _edge_cls[x] = -1;
                }
                return false;
            }

            const Host & _h;
            int _k;
            NodeCounter & _counter;
            int _c;
            std::vector<int> _order;
            std::array<std::vector<int>, 64> _cands;
            std::array<VertexSet, 64> _masks{};
            std::array<int, 64> _cls{};
            std::array<int, 64> _edge_cls{};
            int _count = 0;
        };

        class BoundedEdgesSearch
        {
        public:
            BoundedEdgesSearch(const Host & host, int b, NodeCounter & counter) :
                _h(host), _b(b), _counter(counter)
            {
            }

            void run()
            {
                _seen.insert(_h.all_edges());
                solve(_h.all_edges(), _h.e);
            }

            int best = -1;
            EdgeMask best_set = 0;

        private:
            /// b+1 matched edges of f, or fewer when nu(f) <= b
            auto excess_matching(EdgeMask f) -> std::vector<int>
            {
                std::array<int, 64> mate;
                detail::small_matching(_h.n, _h.masks, f, mate);
                std::vector<int> result;
                for (EdgeMask s = f; s && static_cast<int>(result.size()) <= _b; s &= s - 1) {
                    int i = lowest(s);
                    VertexSet m = _h.masks[i];
                    int u = lowest(m), v = lowest(m & (m - 1));
                    if (mate[u] == v)
                        result.push_back(i);
                }
                return result;
            }

            void solve(EdgeMask f, int size)
            {
                _counter.tick();
                if (size <= best)
                    return;
                auto m = excess_matching(f);
                if (static_cast<int>(m.size()) <= _b) {
                    best = size;
                    best_set = f;
                    return;
                }
                // every edge-disjoint (b+1)-matching costs one deletion
                int disjoint = 0;
                for (EdgeMask rest = f;;) {
                    auto extra = excess_matching(rest);
                    if (static_cast<int>(extra.size()) <= _b)
                        break;
                    ++disjoint;
                    for (int i : extra)
                        rest &= ~(EdgeMask{1} << i);
                }
                if (size - disjoint <= best)
                    return;
                for (int i : m) {
                    EdgeMask next = f & ~(EdgeMask{1} << i);
                    if (_seen.insert(next).second)
                        solve(next, size - 1);
                }
            }

            const Host & _h;
            int _b;
            NodeCounter & _counter;
            std::unordered_set<EdgeMask> _seen;
        };

        auto decide(const Graph & g, const Host & host, int k, int c, Engine engine, NodeCounter & counter)
            -> std::optional<EdgeColoring>
        {
            if (c < 1 || c > host.e)
                return std::nullopt;
            if (host.nu(host.all_edges()) < k)
                return arbitrary_coloring(g, c);
            if (engine == Engine::partition_dfs) {
                PartitionSearch search(host, k, counter, c);
                search.run();
                if (! search.found)
                    return std::nullopt;
                return to_coloring(g, search.best_classes);
            }
            CompletionSearch search(host, k, counter, c);
            if (! search.run())
                return std::nullopt;
            return to_coloring(g, search.classes);
        }

        auto vacuous_result(const Graph & g, int k, Engine engine) -> ArResult
        {
            ArResult r;
            r.graph_id = graph_id(g);
            r.k = k;
            r.ar = g.size();
            r.engine = engine;
            r.vacuous = true;
            r.certificate = certify(g, EdgeColoring::all_distinct(g), k);
            return r;
        }

        auto cheap_lower_bound(const Graph & g, int k) -> int
        {
            if (auto t = cover_template_certificate(g, k))
                return t->colors();
            return 0;
        }
    }

    auto ar_partition_dfs(const Graph & g, int k, const Budget & budget) -> ArResult
    {
        check_k(k);
        Host host(g);
        if (host.nu(host.all_edges()) < k)
            return vacuous_result(g, k, Engine::partition_dfs);

        NodeCounter counter{0, budget.max_nodes};
        PartitionSearch search(host, k, counter, 0);
        try {
            search.run();
        }
        catch (const OutOfNodes &) {
            throw BudgetExhausted("ar_partition_dfs: node budget exhausted", search.best, g.size(), counter.nodes);
        }

        ArResult r;
        r.graph_id = graph_id(g);
        r.k = k;
        r.ar = search.best;
        r.engine = Engine::partition_dfs;
        r.nodes = counter.nodes;
        if (search.found)
            r.certificate = certify(g, to_coloring(g, search.best_classes), k);
        return r;
    }

    auto ar_representative_completion(const Graph & g, int k, const Budget & budget) -> ArResult
    {
        check_k(k);
        Host host(g);
        if (host.nu(host.all_edges()) < k)
            return vacuous_result(g, k, Engine::representative_completion);

        NodeCounter counter{0, budget.max_nodes};
        int upper = g.size();
        try {
            BoundedEdgesSearch bounded(host, k - 1, counter);
            bounded.run();
            upper = std::min(g.size(), bounded.best + 1);

            ArResult r;
            r.graph_id = graph_id(g);
            r.k = k;
            r.engine = Engine::representative_completion;
            for (int c = upper; c >= 1; --c) {
                CompletionSearch search(host, k, counter, c);
                if (search.run()) {
                    r.ar = c;
                    r.certificate = certify(g, to_coloring(g, search.classes), k);
                    break;
                }
                upper = c - 1;
            }
            r.nodes = counter.nodes;
            return r;
        }
        catch (const OutOfNodes &) {
            throw BudgetExhausted("ar_representative_completion: node budget exhausted",
                    std::min(cheap_lower_bound(g, k), upper), upper, counter.nodes);
        }
    }

    auto compute_ar(const Graph & g, int k, Engine engine, const Budget & budget) -> ArResult
    {
        return engine == Engine::partition_dfs ? ar_partition_dfs(g, k, budget) : ar_representative_completion(g, k, budget);
    }

    auto max_edges_matching_bounded(const Graph & g, int b, const Budget & budget) -> BoundedEdgesResult
    {
        if (b < 0)
            throw InvalidArgument("matching bound must be non-negative");
        Host host(g);
        NodeCounter counter{0, budget.max_nodes};
        BoundedEdgesSearch search(host, b, counter);
        try {
            search.run();
        }
        catch (const OutOfNodes &) {
            throw BudgetExhausted("max_edges_matching_bounded: node budget exhausted", std::max(search.best, 0), g.size(), counter.nodes);
        }
        return {search.best, spanning_subgraph(g, search.best_set), counter.nodes};
    }

    auto find_coloring_avoiding(const Graph & g, int k, int colors, Engine engine, const Budget & budget) -> Decision
    {
        check_k(k);
        if (colors < 1)
            throw InvalidArgument("colour count must be at least 1");
        Host host(g);
        NodeCounter counter{0, budget.max_nodes};
        try {
            auto col = decide(g, host, k, colors, engine, counter);
            if (col)
                certify(g, *col, k);
            return {col, counter.nodes};
        }
        catch (const OutOfNodes &) {
            throw BudgetExhausted("find_coloring_avoiding: node budget exhausted", 0, 1, counter.nodes);
        }
    }

    auto cover_template_certificate(const Graph & g, int k) -> std::optional<RainbowCertificate>
    {
        check_k(k);
        int s_size = k - 2;
        if (s_size < 0 || s_size > g.order())
            return std::nullopt;

        VertexSet best_s = 0;
        int best_cover = -1;
        // lexicographic combinations; the first maximiser wins
        std::vector<int> idx(s_size);
        for (int i = 0; i < s_size; ++i)
            idx[i] = i;
        while (true) {
            VertexSet s = 0;
            for (int v : idx)
                s |= bit(v);
            int cover = 0;
            for (auto & e : g.edges())
                cover += (e.mask() & s) != 0;
            if (cover > best_cover) {
                best_cover = cover;
                best_s = s;
            }
            int i = s_size - 1;
            while (i >= 0 && idx[i] == g.order() - s_size + i)
                --i;
            if (i < 0)
                break;
            ++idx[i];
            for (int j = i + 1; j < s_size; ++j)
                idx[j] = idx[j - 1] + 1;
        }

        std::vector<int> cs(g.size());
        int next = 0;
        for (int i = 0; i < g.size(); ++i)
            if (g.edge(i).mask() & best_s)
                cs[i] = ++next;
        bool shared = false;
        for (int i = 0; i < g.size(); ++i)
            if (! (g.edge(i).mask() & best_s)) {
                cs[i] = next + 1;
                shared = true;
            }
        if (! shared && next == 0)
            return std::nullopt;
        auto cert = RainbowCertificate{g, EdgeColoring(g, cs).canonical(), k};
        if (! verify_no_rainbow(cert))
            throw Error("internal error: cover template produced a rainbow kK2");
        return cert;
    }

    namespace
    {
        /// folds colours together until exactly `target` remain
        auto merge_down(EdgeColoring col, int target) -> EdgeColoring
        {
            while (col.num_colors() > target)
                col = col.merge(col.num_colors() - 1, col.num_colors());
            return col;
        }
    }

    auto lower_bound_certificate(const Triangulation & t, int k, int colors_target, const Budget & budget) -> LowerBoundOutcome
    {
        check_k(k);
        auto & g = t.graph();
        if (matching_number(g) < k)
            throw InvalidArgument("lower_bound_certificate needs nu(T) >= k");
        if (colors_target < 1)
            throw InvalidArgument("colour target must be at least 1");

        LowerBoundOutcome out;
        if (auto tmpl = cover_template_certificate(g, k); tmpl && tmpl->colors() >= colors_target) {
            out.certificate = certify(g, merge_down(tmpl->coloring, colors_target), k);
            return out;
        }
        try {
            auto d = find_coloring_avoiding(g, k, colors_target, Engine::representative_completion, budget);
            out.nodes = d.nodes;
            if (d.coloring)
                out.certificate = certify(g, *d.coloring, k);
        }
        catch (const BudgetExhausted & e) {
            out.budget_exhausted = true;
            out.nodes = e.nodes;
        }
        return out;
    }

    namespace
    {
        template <typename F>
        void parallel_for(std::size_t count, unsigned jobs, F && fn)
        {
            jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
            if (jobs <= 1) {
                for (std::size_t i = 0; i < count; ++i)
                    fn(i);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::vector<std::exception_ptr> errors(jobs);
            {
                std::vector<std::jthread> pool;
                for (unsigned j = 0; j < jobs; ++j)
                    pool.emplace_back([&, j] {
                        try {
                            for (std::size_t i; (i = next++) < count;)
                                fn(i);
                        }
                        catch (...) {
                            errors[j] = std::current_exception();
                        }
                    });
            }
            for (auto & e : errors)
                if (e)
                    std::rethrow_exception(e);
        }
    }

    auto rb_class(int n, int k, const RbOptions & options, std::span<const Triangulation> triangulations) -> RbClassResult
    {
        check_k(k);
        if (n < 4 || n < 2 * k)
            throw InvalidArgument("rb_class needs n >= 4 and n >= 2k");

        std::vector<Triangulation> generated;
        if (triangulations.empty()) {
            generated = generate(n);
            triangulations = generated;
        }
        for (auto & t : triangulations)
            if (t.order() != n)
                throw InvalidArgument("triangulation of the wrong order passed to rb_class");

        RbClassResult result;
        result.n = n;
        result.k = k;
        std::size_t count = triangulations.size();
        result.per_graph.resize(count);
        std::vector<std::optional<RainbowCertificate>> certs(count);

        for (std::size_t i = 0; i < count; ++i) {
            auto & t = triangulations[i];
            auto & pg = result.per_graph[i];
            pg.code = canonical_form(t);
            pg.skipped = matching_number(t.graph()) < k;
            pg.upper = t.graph().size();
        }

        auto record_extremal = [&](std::size_t i) {
            result.extremal_graph = result.per_graph[i].code;
            result.extremal_certificate = certs[i];
        };

        // the best certificate so far; rb >= best + 1
        int best = 0;
        bool have_best = false;
        auto consider = [&](std::size_t i) {
            auto & pg = result.per_graph[i];
            if (pg.skipped || ! certs[i])
                return;
            if (! have_best || pg.lower > best || (pg.lower == best && pg.code < result.extremal_graph)) {
                best = pg.lower;
                have_best = true;
                record_extremal(i);
            }
        };

        if (options.exact_per_graph) {
            parallel_for(count, options.jobs, [&](std::size_t i) {
                auto & pg = result.per_graph[i];
                if (pg.skipped)
                    return;
                try {
                    auto ar = compute_ar(triangulations[i].graph(), k, options.engine, options.budget);
                    pg.lower = pg.upper = ar.ar;
                    pg.nodes = ar.nodes;
                    certs[i] = ar.certificate;
                }
                catch (const BudgetExhausted & e) {
                    pg.inconclusive = true;
                    pg.lower = static_cast<int>(e.lower);
                    pg.upper = static_cast<int>(e.upper);
                    pg.nodes = e.nodes;
                }
            });
            for (std::size_t i = 0; i < count; ++i)
                consider(i);
        }
        else {
            for (std::size_t i = 0; i < count; ++i) {
                auto & pg = result.per_graph[i];
                if (pg.skipped)
                    continue;
                if (auto tmpl = cover_template_certificate(triangulations[i].graph(), k)) {
                    certs[i] = tmpl;
                    pg.lower = tmpl->colors();
                }
                consider(i);
            }

            std::vector<std::size_t> pending;
            for (std::size_t i = 0; i < count; ++i)
                if (! result.per_graph[i].skipped)
                    pending.push_back(i);

            // raise the candidate value until every triangulation refutes it
            while (! pending.empty()) {
                int c = best + 1;
                std::vector<char> found(pending.size(), 0);
                parallel_for(pending.size(), options.jobs, [&](std::size_t p) {
                    std::size_t i = pending[p];
                    auto & pg = result.per_graph[i];
                    auto & g = triangulations[i].graph();
                    try {
                        auto d = find_coloring_avoiding(g, k, c, options.engine, options.budget);
                        pg.nodes += d.nodes;
                        if (d.coloring) {
                            certs[i] = RainbowCertificate{g, *d.coloring, k};
                            pg.lower = c;
                            found[p] = 1;
                        }
                        else
                            pg.upper = c - 1;
                    }
                    catch (const BudgetExhausted & e) {
                        pg.inconclusive = true;
                        pg.nodes += e.nodes;
                    }
                });

                std::vector<std::size_t> next;
                for (std::size_t p = 0; p < pending.size(); ++p)
                    if (found[p])
                        next.push_back(pending[p]);
                for (auto i : next)
                    consider(i);
                pending = std::move(next);
            }
        }

        int upper = best;
        for (auto & pg : result.per_graph) {
            result.nodes += pg.nodes;
            if (pg.skipped)
                continue;
            if (pg.inconclusive) {
                result.inconclusive = true;
                upper = std::max(upper, pg.upper);
            }
        }
        result.rb_lower = best + 1;
        result.rb_upper = upper + 1;
        result.rb = result.inconclusive ? 0 : best + 1;
        if (result.extremal_certificate && result.extremal_certificate->colors() != best)
            throw Error("internal error: extremal certificate does not match the class value");
        return result;
    }
}
