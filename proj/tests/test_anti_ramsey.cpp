#include "oracles.hpp"

#include <rbtri/anti_ramsey.hpp>
#include <rbtri/matching.hpp>
#include <rbtri/triangulation.hpp>

#include <doctest.h>

#include <random>

using namespace rbtri;

namespace
{
    auto bipyramid() -> Graph
    {
        return generate(5).front().graph();
    }

    auto pool(int lo, int hi) -> std::vector<Triangulation>
    {
        std::vector<Triangulation> p;
        for (int n = lo; n <= hi; ++n)
            for (auto & t : generate(n))
                p.push_back(t);
        return p;
    }

    void check_result(const Graph & g, int k, const ArResult & r)
    {
        if (r.certificate) {
            CHECK(r.certificate->graph == g);
            CHECK(r.certificate->k == k);
            CHECK(r.certificate->colors() == r.ar);
            CHECK(verify_no_rainbow(*r.certificate));
        }
        else
            CHECK((r.ar == 0 || g.size() == 0));
    }
}

TEST_CASE("ar examples")
{
    auto k4 = complete_graph(4);
    for (auto engine : {Engine::partition_dfs, Engine::representative_completion}) {
        auto r = compute_ar(k4, 2, engine);
        CHECK(r.ar == 3);
        CHECK(r.engine == engine);
        check_result(k4, 2, r);
        CHECK(compute_ar(k4, 1, engine).ar == 0);
        CHECK(compute_ar(bipyramid(), 2, engine).ar == 1);

        // no 3K2 in K4: vacuous, all edges distinct
        auto v = compute_ar(k4, 3, engine);
        CHECK(v.vacuous);
        CHECK(v.ar == 6);
        check_result(k4, 3, v);
        CHECK_THROWS_AS(compute_ar(k4, 0, engine), InvalidArgument);
    }
    CHECK(compute_ar(k4, 2, Engine::partition_dfs).graph_id == "0402030400010403000102040001030200");
    CHECK(engine_name(parse_engine("partition")) == "partition_dfs");
    CHECK(engine_name(parse_engine("completion")) == "representative_completion");
    CHECK_THROWS_AS(parse_engine("nope"), InvalidArgument);
}

TEST_CASE("octahedron and T6 for k = 3")
{
    int best = 0;
    for (auto & t : generate(6)) {
        auto a = ar_partition_dfs(t.graph(), 3);
        auto b = ar_representative_completion(t.graph(), 3);
        CHECK(a.ar == b.ar);
        best = std::max(best, a.ar);
    }
    CHECK(best == 7);
    auto oct = octahedron();
    CHECK(ar_partition_dfs(oct, 3).ar == ar_representative_completion(oct, 3).ar);
}

TEST_CASE("ar matches exhaustive colouring enumeration on small graphs")
{
    std::mt19937_64 rng(31);
    auto ts = pool(4, 6);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto & t = ts[rng() % ts.size()];
        auto g = oracle::random_subgraph(t.graph(), 0.7, rng);
        if (g.size() > 9 || g.size() == 0)
            continue;
        for (int k = 1; k <= 3; ++k) {
            int expected = oracle::anti_ramsey(g, k);
            auto a = ar_partition_dfs(g, k);
            auto b = ar_representative_completion(g, k);
            CHECK(a.ar == expected);
            CHECK(b.ar == expected);
            check_result(g, k, a);
            check_result(g, k, b);
            ++checked;
        }
    }
    CHECK(oracle::anti_ramsey(complete_graph(4), 2) == 3);
    CHECK(oracle::anti_ramsey(bipyramid(), 2) == 1);
    CHECK(checked >= 60);
}

TEST_CASE("engine equivalence on T4..T6 and random subgraphs")
{
    for (auto & t : pool(4, 6))
        for (int k : {2, 3}) {
            auto a = ar_partition_dfs(t.graph(), k);
            auto b = ar_representative_completion(t.graph(), k);
            CHECK(a.ar == b.ar);
            CHECK(a.vacuous == b.vacuous);
            check_result(t.graph(), k, a);
            check_result(t.graph(), k, b);
        }

    std::mt19937_64 rng(32);
    auto ts = pool(5, 8);
    int done = 0;
    while (done < 50) {
        auto & t = ts[rng() % ts.size()];
        auto g = oracle::random_subgraph(t.graph(), 0.6, rng);
        if (g.size() > 13 || g.size() < 4)
            continue;
        for (int k : {2, 3}) {
            auto a = ar_partition_dfs(g, k);
            auto b = ar_representative_completion(g, k);
            CHECK(a.ar == b.ar);
            check_result(g, k, b);
        }
        ++done;
    }
}

TEST_CASE("ar is non-decreasing in k and equals e(G) once nu(G) < k")
{
    for (auto & t : pool(4, 7)) {
        auto & g = t.graph();
        int nu = matching_number(g);
        int prev = -1;
        for (int k = 1; k <= nu + 1; ++k) {
            auto r = ar_representative_completion(g, k);
            CHECK(r.ar >= prev);
            prev = r.ar;
            CHECK(r.vacuous == (nu < k));
            if (nu < k)
                CHECK(r.ar == g.size());
        }
    }
}

TEST_CASE("optimal certificates are locally maximal")
{
    std::mt19937_64 rng(33);
    for (auto & t : pool(5, 7))
        for (int k : {2, 3}) {
            auto r = ar_representative_completion(t.graph(), k);
            if (r.vacuous || ! r.certificate)
                continue;
            auto & col = r.certificate->coloring;
            auto classes = col.classes();
            int refinements = 0;
            // split each class in a few ways: one more colour must create a rainbow kK2
            for (std::size_t c = 0; c < classes.size(); ++c) {
                if (classes[c].size() < 2)
                    continue;
                for (int rep = 0; rep < 3; ++rep) {
                    std::vector<int> cs(col.colors().begin(), col.colors().end());
                    auto cls = classes[c];
                    std::shuffle(cls.begin(), cls.end(), rng);
                    std::size_t cut = 1 + rng() % (cls.size() - 1);
                    for (std::size_t i = 0; i < cut; ++i)
                        cs[cls[i]] = col.num_colors() + 1;
                    EdgeColoring finer(t.graph(), cs);
                    CHECK(has_rainbow_matching(finer, k));
                    ++refinements;
                }
            }
            CHECK(refinements > 0);
        }
}

TEST_CASE("max_edges_matching_bounded")
{
    auto k4 = complete_graph(4);
    auto r = max_edges_matching_bounded(k4, 1);
    CHECK(r.max_edges == 3);
    CHECK(r.witness.size() == 3);
    CHECK(matching_number(r.witness) <= 1);
    CHECK(max_edges_matching_bounded(octahedron(), 0).max_edges == 0);
    CHECK(max_edges_matching_bounded(octahedron(), 3).max_edges == 12);
    CHECK(max_edges_matching_bounded(octahedron(), 5).max_edges == 12);
    CHECK_THROWS_AS(max_edges_matching_bounded(k4, -1), InvalidArgument);

    std::mt19937_64 rng(34);
    auto ts = pool(4, 8);
    for (int trial = 0; trial < 80; ++trial) {
        auto & t = ts[rng() % ts.size()];
        auto g = oracle::random_subgraph(t.graph(), 0.75, rng);
        if (g.size() > 16)
            continue;
        for (int b = 0; b <= 3; ++b) {
            auto res = max_edges_matching_bounded(g, b);
            CHECK(res.max_edges == oracle::max_edges_matching_bounded(g, b));
            CHECK(res.witness.size() == res.max_edges);
            CHECK(matching_number(res.witness) <= b);
            for (auto & e : res.witness.edges())
                CHECK(g.adjacent(e.u, e.v));
        }
    }
}

TEST_CASE("cover template and lower-bound certificates")
{
    auto k4 = complete_graph(4);
    auto tmpl = cover_template_certificate(k4, 2);
    REQUIRE(tmpl);
    CHECK(tmpl->colors() == 1);
    CHECK(verify_no_rainbow(*tmpl));

    auto t4 = Triangulation::from_graph(k4);
    auto lb = lower_bound_certificate(t4, 2, 3);
    REQUIRE(lb.certificate);
    CHECK(lb.certificate->colors() == 3);
    CHECK(verify_no_rainbow(*lb.certificate));
    CHECK_FALSE(lower_bound_certificate(t4, 2, 4).certificate);
    CHECK_THROWS_AS(lower_bound_certificate(t4, 3, 3), InvalidArgument);

    // template soundness: ar >= edges meeting the best (k-2)-set + 1
    for (auto & t : pool(6, 8))
        for (int k = 3; k <= matching_number(t.graph()); ++k) {
            auto c = cover_template_certificate(t.graph(), k);
            REQUIRE(c);
            CHECK(verify_no_rainbow(*c));
            if (t.order() <= 7)
                CHECK(ar_representative_completion(t.graph(), k).ar >= c->colors());
            auto merged = lower_bound_certificate(t, k, c->colors() - 1);
            REQUIRE(merged.certificate);
            CHECK(merged.certificate->colors() == c->colors() - 1);
            CHECK(verify_no_rainbow(*merged.certificate));
        }
}

TEST_CASE("rb_class examples")
{
    auto r42 = rb_class(4, 2);
    CHECK(r42.rb == 4);
    CHECK_FALSE(r42.inconclusive);
    REQUIRE(r42.extremal_certificate);
    CHECK(r42.extremal_certificate->colors() == 3);
    CHECK(verify_no_rainbow(*r42.extremal_certificate));

    for (int n = 5; n <= 8; ++n)
        CHECK(rb_class(n, 2).rb == 2);

    auto r63 = rb_class(6, 3);
    CHECK(r63.rb == 8);
    REQUIRE(r63.extremal_certificate);
    CHECK(r63.extremal_certificate->colors() == 7);

    auto r84 = rb_class(8, 4);
    CHECK(r84.rb == 15);
    REQUIRE(r84.extremal_certificate);
    CHECK(r84.extremal_certificate->colors() == 14);
    CHECK(verify_no_rainbow(*r84.extremal_certificate));
    CHECK(canonical_form(Triangulation::from_graph(r84.extremal_certificate->graph)) == r84.extremal_graph);

    CHECK_THROWS_AS(rb_class(5, 3), InvalidArgument);
    CHECK_THROWS_AS(rb_class(3, 1), InvalidArgument);
}

TEST_CASE("decision mode agrees with exact per-graph values")
{
    for (int n = 6; n <= 7; ++n)
        for (int k : {2, 3}) {
            RbOptions exact;
            exact.exact_per_graph = true;
            auto a = rb_class(n, k, exact);
            auto b = rb_class(n, k);
            RbOptions partition = exact;
            partition.engine = Engine::partition_dfs;
            auto c = rb_class(n, k, partition);
            CHECK(a.rb == b.rb);
            CHECK(a.rb == c.rb);
            CHECK(a.extremal_graph == b.extremal_graph);
            int best = 0;
            for (std::size_t i = 0; i < a.per_graph.size(); ++i) {
                auto & pa = a.per_graph[i];
                auto & pb = b.per_graph[i];
                CHECK(pa.code == pb.code);
                CHECK(pa.lower == pa.upper);
                CHECK(pa.lower == c.per_graph[i].lower);
                // the decision bracket contains the exact value
                CHECK(pb.lower <= pa.lower);
                CHECK(pa.lower <= pb.upper);
                if (! pa.skipped)
                    best = std::max(best, pa.lower);
            }
            CHECK(a.rb == best + 1);
        }
}

TEST_CASE("rb_class is independent of the worker count")
{
    RbOptions one;
    RbOptions three;
    three.jobs = 3;
    auto a = rb_class(8, 3, one);
    auto b = rb_class(8, 3, three);
    CHECK(a.rb == 9);
    CHECK(a.rb == b.rb);
    CHECK(a.extremal_graph == b.extremal_graph);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("budgets bracket the answer instead of guessing")
{
    auto oct = octahedron();
    int exact = ar_partition_dfs(oct, 3).ar;
    for (std::uint64_t budget : {1ULL, 10ULL, 100ULL}) {
        for (auto engine : {Engine::partition_dfs, Engine::representative_completion}) {
            try {
                auto r = compute_ar(oct, 3, engine, Budget{budget});
                CHECK(r.ar == exact);
            }
            catch (const BudgetExhausted & e) {
                CHECK(e.lower <= exact);
                CHECK(exact <= e.upper);
            }
        }
        RbOptions options;
        options.budget = Budget{budget};
        auto r = rb_class(7, 3, options);
        if (r.inconclusive) {
            CHECK(r.rb_lower <= 8);
            CHECK(8 <= r.rb_upper);
        }
        else
            CHECK(r.rb == 8);
    }
    RbOptions tiny;
    tiny.budget = Budget{1};
    CHECK(rb_class(8, 4, tiny).inconclusive);
}
