#include "oracles.hpp"

#include <rbtri/matching.hpp>
#include <rbtri/proof_check.hpp>

#include <doctest.h>

#include <json.hpp>

using namespace rbtri;

TEST_CASE("hypohamiltonian audit")
{
    const int sizes[] = {1, 2, 5};
    for (int n = 5; n <= 7; ++n) {
        auto r = check_hypohamiltonian(n);
        CHECK(r.passed());
        CHECK_FALSE(r.exploration);
        CHECK(r.universe_size == sizes[n - 5]);
        CHECK(r.instances_checked == sizes[n - 5]);
        REQUIRE_FALSE(r.notes.empty());
        CHECK(r.notes.front().find("non-Hamiltonian") != std::string::npos);
    }
    // n = 8 is outside the claimed range: reported, not asserted
    auto r8 = check_hypohamiltonian(8);
    CHECK(r8.exploration);
    CHECK(r8.instances_checked == 14);

    // the audit agrees with the permutation oracle
    for (int n = 5; n <= 8; ++n)
        for (auto & t : generate(n)) {
            bool all = true;
            for (int u = 0; u < n; ++u)
                all &= oracle::is_hamiltonian(t.graph().without_vertex(u));
            auto single = check_hypohamiltonian(n, std::span<const Triangulation>(&t, 1));
            CHECK(single.failures.empty() == all);
        }
}

TEST_CASE("three-connectivity audit")
{
    const int sizes[] = {1, 1, 2, 5, 14, 50, 233};
    for (int n = 4; n <= 10; ++n) {
        auto r = check_three_connected(n);
        CHECK(r.passed());
        CHECK(r.instances_checked == sizes[n - 4]);
    }
    for (auto & t : generate(7))
        CHECK(oracle::connectivity(t.graph()) >= 3);
}

TEST_CASE("matching closure counts")
{
    auto k4 = complete_graph(4);
    auto pm = std::vector<Edge>{{0, 1}, {2, 3}};
    auto c = matching_closure_counts(k4, pm);
    CHECK(c.e_h == 6);
    CHECK(c.e_cross == 0);
    CHECK(c.e_r == 0);

    auto oct = octahedron();
    auto one = matching_closure_counts(oct, std::vector<Edge>{{0, 1}});
    CHECK(one.e_h == 1);
    CHECK(one.e_r == static_cast<int>(internal_edges(oct, vertex_set({2, 3, 4, 5})).size()));
    CHECK(one.e_h + one.e_cross + one.e_r == 12);

    auto none = matching_closure_counts(oct, {});
    CHECK(none.e_h == 0);
    CHECK(none.e_cross == 0);
    CHECK(none.e_r == 12);

    CHECK_THROWS_AS(matching_closure_counts(k4, std::vector<Edge>{{0, 1}, {1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(matching_closure_counts(cycle_graph(4), std::vector<Edge>{{0, 2}}), InvalidArgument);
}

TEST_CASE("closure buckets on every matching of small triangulations")
{
    for (int n = 4; n <= 8; ++n)
        for (auto & t : generate(n)) {
            auto & g = t.graph();
            std::vector<Edge> cur;
            std::function<void(int, VertexSet)> rec = [&](int i, VertexSet used) {
                auto c = matching_closure_counts(g, cur);
                CHECK(c.e_h + c.e_cross + c.e_r == g.size());
                if (cur.size() >= 2)
                    CHECK(c.e_h <= 3 * (2 * static_cast<int>(cur.size())) - 6);
                for (int j = i; j < g.size(); ++j)
                    if (! (g.edge(j).mask() & used)) {
                        cur.push_back(g.edge(j));
                        rec(j + 1, used | g.edge(j).mask());
                        cur.pop_back();
                    }
            };
            rec(0, 0);
        }
}

TEST_CASE("counting bounds audit")
{
    for (int n = 4; n <= 7; ++n)
        for (auto & t : generate(n))
            for (int k = 2; k <= matching_number(t.graph()) + 1; ++k) {
                auto r = check_counting_bounds(t, k);
                CHECK(r.passed());
                CHECK(r.universe_size > 0);
            }
    auto k4 = Triangulation::from_graph(complete_graph(4));
    auto r = check_counting_bounds(k4, 2);
    CHECK(r.passed());
    bool guarded = false;
    for (auto & note : r.notes)
        guarded |= note.find("k < 5") != std::string::npos;
    CHECK(guarded);
    CHECK_THROWS_AS(check_counting_bounds(k4, 4), InvalidArgument);
    CHECK_THROWS_AS(check_counting_bounds(k4, 1), InvalidArgument);

    // sampled mode on a larger triangulation, deterministic under the seed
    auto t10 = generate(10).back();
    CountingOptions opts{8, 30, 0};
    auto a = check_counting_bounds(t10, 5, opts);
    auto b = check_counting_bounds(t10, 5, opts);
    CHECK(a.passed());
    CHECK(a.to_json() == b.to_json());
}

TEST_CASE("edge-disjoint matchings")
{
    auto k4 = complete_graph(4);
    auto two = edge_disjoint_matchings(k4, 2, 2);
    REQUIRE(two);
    CHECK(two->size() == 2);
    CHECK(edge_disjoint_matchings(k4, 2, 3));
    CHECK_FALSE(edge_disjoint_matchings(k4, 2, 4));
    auto oct = edge_disjoint_matchings(octahedron(), 3, 2);
    REQUIRE(oct);
    for (auto & m : *oct) {
        CHECK(m.size() == 3);
        CHECK(is_matching(octahedron(), m.edges));
    }
    for (auto & e : (*oct)[0].edges)
        CHECK(std::find((*oct)[1].edges.begin(), (*oct)[1].edges.end(), e) == (*oct)[1].edges.end());
    CHECK_FALSE(edge_disjoint_matchings(octahedron(), 4, 1));
    CHECK(edge_disjoint_matchings(octahedron(), 3, 4));
    CHECK_THROWS_AS(edge_disjoint_matchings(k4, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(edge_disjoint_matchings(k4, 1, 0), InvalidArgument);
}

TEST_CASE("disjoint matching claim on random colourings")
{
    int premises = 0;
    for (int n = 7; n <= 9; ++n)
        for (auto & t : generate(n))
            for (int k : {2, 3}) {
                auto r = check_matching_claim(t, k, 20, 7);
                CHECK(r.passed());
                premises += r.universe_size;
            }
    CHECK(premises > 100);
}

TEST_CASE("audit reports serialise with a stable field order")
{
    auto r = check_three_connected(5);
    auto j = nlohmann::ordered_json::parse(r.to_json());
    std::vector<std::string> keys;
    for (auto & [k, _] : j.items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"claim", "universe", "universe_size", "instances_checked", "failures", "notes",
                          "exploration", "verdict"});
    CHECK(j["verdict"] == "pass");

    AuditReport incomplete;
    incomplete.universe_size = 3;
    incomplete.instances_checked = 2;
    CHECK_FALSE(incomplete.passed());
}
