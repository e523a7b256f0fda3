#include <rbtri/proof_check.hpp>
#include <rbtri/rainbow.hpp>

#include "search_core.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace rbtri
{
    auto AuditReport::to_json() const -> std::string
    {
        nlohmann::ordered_json j;
        j["claim"] = claim;
        j["universe"] = universe;
        j["universe_size"] = universe_size;
        j["instances_checked"] = instances_checked;
        j["failures"] = failures;
        j["notes"] = notes;
        j["exploration"] = exploration;
        j["verdict"] = passed() ? "pass" : "fail";
        return j.dump();
    }

    namespace
    {
        auto class_or_generate(int n, std::span<const Triangulation> ts, std::vector<Triangulation> & storage)
            -> std::span<const Triangulation>
        {
            if (! ts.empty())
                return ts;
            storage = generate(n);
            return storage;
        }

        void sort_failures(AuditReport & r)
        {
            std::sort(r.failures.begin(), r.failures.end());
        }
    }

    auto check_hypohamiltonian(int n, std::span<const Triangulation> ts) -> AuditReport
    {
        std::vector<Triangulation> storage;
        ts = class_or_generate(n, ts, storage);
        AuditReport r;
        r.claim = "hypohamiltonian";
        r.universe = "all T in T_" + std::to_string(n);
        r.universe_size = static_cast<int>(ts.size());
        r.exploration = n < 5 || n > 7;
        r.notes.push_back("definition: G - u is Hamiltonian for every vertex u; "
                          "the usual definition also requires G itself to be non-Hamiltonian, which is not checked");
        for (auto & t : ts) {
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                ok = is_hamiltonian(t.graph().without_vertex(u));
            if (! ok)
                r.failures.push_back(canonical_form(t).hex());
            ++r.instances_checked;
        }
        sort_failures(r);
        return r;
    }

    auto check_three_connected(int n, std::span<const Triangulation> ts) -> AuditReport
    {
        std::vector<Triangulation> storage;
        ts = class_or_generate(n, ts, storage);
        AuditReport r;
        r.claim = "three_connected";
        r.universe = "all T in T_" + std::to_string(n);
        r.universe_size = static_cast<int>(ts.size());
        for (auto & t : ts) {
            if (vertex_connectivity(t.graph()) < 3)
                r.failures.push_back(canonical_form(t).hex());
            ++r.instances_checked;
        }
        sort_failures(r);
        return r;
    }

    auto matching_closure_counts(const Graph & g, std::span<const Edge> m) -> ClosureCounts
    {
        if (! is_matching(g, m))
            throw InvalidArgument("matching_closure_counts needs a matching of the graph");
        VertexSet h = 0;
        for (auto e : m)
            h |= e.mask();
        ClosureCounts c;
        for (auto & e : g.edges()) {
            int inside = popcount(e.mask() & h);
            if (inside == 2)
                ++c.e_h;
            else if (inside == 1)
                ++c.e_cross;
            else
                ++c.e_r;
        }
        return c;
    }

    namespace
    {
        using detail::EdgeMask;

        struct SmallHost
        {
            int n;
            std::vector<VertexSet> masks;

            explicit SmallHost(const Graph & g) :
                n(g.order())
            {
                if (g.size() > 64)
                    throw InvalidArgument("scenario audits support at most 64 edges");
                for (auto & e : g.edges())
                    masks.push_back(e.mask());
            }

            auto nu(EdgeMask s) const -> int
            {
                return detail::small_matching_number(n, masks, s);
            }

            auto size() const -> int
            {
                return static_cast<int>(masks.size());
            }
        };

        /// all matchings of exactly `size` edges inside `subset`, as edge masks
        void matchings_of_size(const SmallHost & h, EdgeMask subset, int size, const std::function<void(EdgeMask)> & visit,
                int from = 0, EdgeMask chosen = 0, VertexSet used = 0)
        {
            if (size == 0) {
                visit(chosen);
                return;
            }
            for (int i = from; i < h.size(); ++i)
                if ((subset >> i & 1) && ! (h.masks[i] & used))
                    matchings_of_size(h, subset, size - 1, visit, i + 1, chosen | (EdgeMask{1} << i), used | h.masks[i]);
        }

        struct MaximalEnumeration
        {
            const SmallHost & h;
            int bound;
            std::vector<EdgeMask> found;

            void search(int i, EdgeMask chosen)
            {
                if (i == h.size()) {
                    for (int x = 0; x < h.size(); ++x)
                        if (! (chosen >> x & 1) && h.nu(chosen | (EdgeMask{1} << x)) <= bound)
                            return;
                    found.push_back(chosen);
                    return;
                }
                EdgeMask with = chosen | (EdgeMask{1} << i);
                if (h.nu(with) <= bound)
                    search(i + 1, with);
                search(i + 1, chosen);
            }
        };

        auto random_maximal(const SmallHost & h, int bound, std::mt19937_64 & rng) -> EdgeMask
        {
            std::vector<int> order(h.size());
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            EdgeMask chosen = 0;
            for (int i : order)
                if (h.nu(chosen | (EdgeMask{1} << i)) <= bound)
                    chosen |= EdgeMask{1} << i;
            return chosen;
        }
    }

    auto check_counting_bounds(const Triangulation & t, int k, const CountingOptions & options) -> AuditReport
    {
        if (k < 2)
            throw InvalidArgument("check_counting_bounds needs k >= 2");
        auto & g = t.graph();
        int n = g.order();
        SmallHost host(g);
        EdgeMask all = host.size() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << host.size()) - 1;
        if (host.nu(all) < k - 1)
            throw InvalidArgument("check_counting_bounds needs nu(T) >= k-1");

        AuditReport r;
        r.claim = "counting_bounds k=" + std::to_string(k);
        bool exhaustive = n <= options.exhaustive_max_order;
        r.universe = std::string(exhaustive ? "all" : std::to_string(options.samples) + " sampled")
            + " edge-maximal kK2-free subgraphs G of T " + canonical_form(t).hex() + " with each (k-1)K2 of G";
        if (k < 3)
            r.notes.push_back("k < 3: e_G(H) <= 6k-12 not asserted (H has fewer than 3 vertices)");
        if (k < 5)
            r.notes.push_back("k < 5: the e(G) <= 2n+6k-16 chain is not asserted");

        std::vector<EdgeMask> scenarios;
        if (exhaustive) {
            MaximalEnumeration e{host, k - 1, {}};
            e.search(0, 0);
            scenarios = std::move(e.found);
        }
        else {
            std::mt19937_64 rng(options.seed);
            for (int s = 0; s < options.samples; ++s)
                scenarios.push_back(random_maximal(host, k - 1, rng));
        }

        for (EdgeMask sub : scenarios) {
            auto sg = spanning_subgraph(g, sub);
            matchings_of_size(host, sub, k - 1, [&](EdgeMask m) {
                ++r.universe_size;
                std::vector<Edge> medges;
                for (EdgeMask x = m; x; x &= x - 1)
                    medges.push_back(g.edge(lowest(x)));
                auto c = matching_closure_counts(sg, medges);
                std::vector<std::string> broken;
                if (c.e_r != 0)
                    broken.push_back("e_G(R)=" + std::to_string(c.e_r));
                if (c.e_cross > 2 * n - 4)
                    broken.push_back("e_G(V(H),R)=" + std::to_string(c.e_cross));
                if (k >= 3 && c.e_h > 6 * k - 12)
                    broken.push_back("e_G(H)=" + std::to_string(c.e_h));
                if (k >= 5 && sg.size() > 2 * n + 6 * k - 16)
                    broken.push_back("e(G)=" + std::to_string(sg.size()));
                if (c.e_h + c.e_cross + c.e_r != sg.size())
                    broken.push_back("bucket sum mismatch");
                if (! broken.empty()) {
                    std::string msg = "subgraph " + std::to_string(sub) + ":";
                    for (auto & b : broken)
                        msg += " " + b;
                    r.failures.push_back(msg);
                }
                ++r.instances_checked;
            });
        }
        sort_failures(r);
        return r;
    }

    auto edge_disjoint_matchings(const Graph & g, int k, int count) -> std::optional<std::vector<Matching>>
    {
        if (k < 1 || count < 1)
            throw InvalidArgument("edge_disjoint_matchings needs k >= 1 and count >= 1");
        int e = g.size();
        std::vector<char> taken(e, 0);
        std::vector<std::vector<int>> chosen(count);

        // matchings ordered by their smallest edge index
        std::function<bool(int, int, int, VertexSet, int)> search = [&](int which, int from, int need, VertexSet used, int min_first) -> bool {
            if (need == 0) {
                if (which + 1 == count)
                    return true;
                return search(which + 1, chosen[which].front() + 1, k, 0, chosen[which].front() + 1);
            }
            for (int i = from; i < e; ++i) {
                if (taken[i] || (g.edge(i).mask() & used))
                    continue;
                if (need == k && i < min_first)
                    continue;
                taken[i] = 1;
                chosen[which].push_back(i);
                if (search(which, i + 1, need - 1, used | g.edge(i).mask(), min_first))
                    return true;
                chosen[which].pop_back();
                taken[i] = 0;
            }
            return false;
        };
        if (! search(0, 0, k, 0, 0))
            return std::nullopt;

        std::vector<Matching> result;
        std::vector<char> seen(e, 0);
        for (auto & idx : chosen) {
            Matching m;
            for (int i : idx) {
                if (seen[i])
                    throw Error("internal error: matchings share an edge");
                seen[i] = 1;
                m.edges.push_back(g.edge(i));
            }
            if (m.size() != k || ! is_matching(g, m.edges))
                throw Error("internal error: edge-disjoint matching witness failed re-verification");
            result.push_back(std::move(m));
        }
        return result;
    }

    auto check_matching_claim(const Triangulation & t, int k, int samples, std::uint64_t seed) -> AuditReport
    {
        if (k < 1)
            throw InvalidArgument("k must be at least 1");
        auto & g = t.graph();
        AuditReport r;
        r.claim = "disjoint_matching_claim k=" + std::to_string(k);
        r.universe = std::to_string(samples) + " random colourings of T " + canonical_form(t).hex()
            + " whose representative subgraph holds two edge-disjoint kK2 missed by an edge of T";

        std::mt19937_64 rng(seed);
        for (int s = 0; s < samples; ++s) {
            int c = std::uniform_int_distribution<int>(1, g.size())(rng);
            std::vector<int> cs(g.size());
            for (auto & x : cs)
                x = std::uniform_int_distribution<int>(1, c)(rng);
            // compress to contiguous colours
            std::vector<int> rename(c + 1, 0);
            int used = 0;
            for (auto & x : cs) {
                if (! rename[x])
                    rename[x] = ++used;
                x = rename[x];
            }
            EdgeColoring col(g, cs);
            auto rep = representative_subgraph(col);

            SmallHost h(rep);
            EdgeMask all = h.size() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << h.size()) - 1;
            std::vector<EdgeMask> ms;
            matchings_of_size(h, all, k, [&](EdgeMask m) {
                if (ms.size() < 4000)
                    ms.push_back(m);
            });

            std::optional<VertexSet> scenario;
            for (std::size_t i = 0; i < ms.size() && ! scenario; ++i)
                for (std::size_t j = i + 1; j < ms.size() && ! scenario; ++j) {
                    if (ms[i] & ms[j])
                        continue;
                    VertexSet u = 0;
                    for (EdgeMask x = ms[i] | ms[j]; x; x &= x - 1)
                        u |= h.masks[lowest(x)];
                    for (auto & e : g.edges())
                        if (! (e.mask() & u)) {
                            scenario = u;
                            break;
                        }
                }
            if (! scenario)
                continue;
            ++r.universe_size;
            ++r.instances_checked;
            if (! has_rainbow_matching(col, k + 1))
                r.failures.push_back("sample " + std::to_string(s) + ": " + write_coloring(col));
        }
        if (r.universe_size == 0)
            r.notes.push_back("no sampled colouring met the premise");
        sort_failures(r);
        return r;
    }
}
