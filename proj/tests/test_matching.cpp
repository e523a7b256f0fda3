#include "oracles.hpp"

#include <rbtri/matching.hpp>
#include <rbtri/triangulation.hpp>

#include <doctest.h>

#include <random>

using namespace rbtri;

namespace
{
    auto removed_set(int n, VertexSet s) -> std::vector<bool>
    {
        std::vector<bool> r(n, false);
        for (int v : vertices_of(s))
            r[v] = true;
        return r;
    }

    /// Every invariant of a decomposition, recounted from scratch.
    void check_decomposition(const Graph & g)
    {
        int n = g.order();
        auto d = berge_tutte_witness(g);
        int nu = oracle::matching_number(g);
        REQUIRE(d.matching_size == nu);
        int s = popcount(d.s);
        int q = oracle::odd_component_count(g, removed_set(n, d.s));
        CHECK(d.q == q);
        CHECK(static_cast<int>(d.odd_components.size()) == q);
        CHECK(d.deficiency == q - s);
        CHECK(2 * nu == n - (q - s));
        CHECK(s <= nu);

        VertexSet covered = d.s | d.even_vertices;
        for (std::size_t i = 0; i < d.odd_components.size(); ++i) {
            auto c = d.odd_components[i];
            CHECK((covered & c) == 0);
            covered |= c;
            CHECK(popcount(c) % 2 == 1);
            CHECK(oracle::is_factor_critical(induced_subgraph(g, c).graph));
            if (i > 0)
                CHECK(popcount(d.odd_components[i - 1]) >= popcount(c));
        }
        CHECK(covered == g.all_vertices());

        // the singletons form the tail of the list
        int t = q;
        for (int i = 0; i < q; ++i)
            if (popcount(d.odd_components[i]) == 1) {
                t = i;
                break;
            }
        CHECK(d.first_singleton == (t < q ? std::optional<int>(t) : std::nullopt));
        for (int i = t; i < q; ++i)
            CHECK(popcount(d.odd_components[i]) == 1);
        CHECK(static_cast<int>(d.singletons.size()) == q - t);
        for (int i = t; i < q; ++i)
            CHECK(bit(d.singletons[i - t]) == d.odd_components[i]);
    }
}

TEST_CASE("matching numbers")
{
    CHECK(matching_number(complete_graph(4)) == 2);
    CHECK(matching_number(star_graph(5)) == 1);
    CHECK(matching_number(octahedron()) == 3);
    CHECK(matching_number(Graph(3)) == 0);
    CHECK(max_matching(complete_graph(4)).edges == std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK(has_perfect_matching(octahedron()));
    CHECK_FALSE(has_perfect_matching(star_graph(3)));
    CHECK(is_matching(complete_graph(4), std::vector<Edge>{{0, 1}, {2, 3}}));
    CHECK_FALSE(is_matching(complete_graph(4), std::vector<Edge>{{0, 1}, {1, 3}}));
    CHECK_FALSE(is_matching(path_graph(4), std::vector<Edge>{{0, 2}}));
}

TEST_CASE("max_matching against brute force")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 1500; ++trial) {
        int n = 1 + trial % 10;
        auto g = oracle::random_graph(n, 0.15 + 0.1 * (trial % 6), rng);
        auto m = max_matching(g);
        CHECK(is_matching(g, m.edges));
        CHECK(m.size() == oracle::matching_number(g));
        CHECK(matching_number(g) == m.size());
        if (n <= 8) {
            auto all = oracle::maximum_matchings(g);
            CHECK(m.edges == *std::min_element(all.begin(), all.end()));
        }
    }
}

TEST_CASE("factor-criticality")
{
    CHECK(is_factor_critical(cycle_graph(5)));
    CHECK_FALSE(is_factor_critical(complete_graph(4)));
    CHECK_FALSE(is_factor_critical(star_graph(3)));
    CHECK(is_factor_critical(Graph(1)));
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = oracle::random_graph(1 + trial % 9, 0.5, rng);
        CHECK(is_factor_critical(g) == oracle::is_factor_critical(g));
    }
}

TEST_CASE("Berge-Tutte witness examples")
{
    auto star = berge_tutte_witness(star_graph(3));
    CHECK(star.s == bit(0));
    CHECK(star.matching_size == 1);
    CHECK(star.q == 3);
    CHECK(star.first_singleton == 0);
    CHECK(star.singletons == std::vector<int>{1, 2, 3});

    auto p4 = berge_tutte_witness(path_graph(4));
    CHECK(p4.s == 0);
    CHECK(p4.q == 0);
    CHECK(p4.matching_size == 2);
    CHECK(p4.deficiency == 0);

    // triangle 0 1 2 with pendant 3 on 2
    auto g = Graph(4, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    auto d = berge_tutte_witness(g);
    CHECK(d.matching_size == 2);
    CHECK(2 * d.matching_size == 4 - (d.q - popcount(d.s)));
    check_decomposition(g);
}

TEST_CASE("Berge-Tutte on every triangulation up to order 10")
{
    for (int n = 4; n <= 10; ++n)
        for (auto & t : generate(n))
            check_decomposition(t.graph());
}

TEST_CASE("Berge-Tutte on random subgraphs of triangulations")
{
    std::mt19937_64 rng(13);
    std::vector<Triangulation> pool;
    for (int n = 4; n <= 9; ++n)
        for (auto & t : generate(n))
            pool.push_back(t);
    for (int trial = 0; trial < 500; ++trial) {
        auto & t = pool[rng() % pool.size()];
        check_decomposition(oracle::random_subgraph(t.graph(), 0.2 + 0.6 * (trial % 4) / 4.0, rng));
    }
}

TEST_CASE("Berge-Tutte inequality holds for every small vertex set")
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + trial % 8;
        auto g = oracle::random_graph(n, 0.35, rng);
        int nu = oracle::matching_number(g);
        bool attained = false;
        for (VertexSet s = 0; s < (VertexSet{1} << n); ++s) {
            int size = popcount(s);
            int q = oracle::odd_component_count(g, removed_set(n, s));
            int bound = n - (q - size);
            if (size <= 5)
                CHECK(2 * nu <= bound);
            attained |= 2 * nu == bound;
        }
        CHECK(attained);
    }
}
