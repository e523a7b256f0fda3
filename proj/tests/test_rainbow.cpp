#include "oracles.hpp"

#include <rbtri/graph6.hpp>
#include <rbtri/matching.hpp>
#include <rbtri/rainbow.hpp>
#include <rbtri/triangulation.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

using namespace rbtri;

namespace
{
    /// K4 coloured by its three perfect matchings.
    auto k4_pm() -> EdgeColoring
    {
        auto k4 = complete_graph(4);
        // edges 01 02 03 12 13 23; PMs {01,23} {02,13} {03,12}
        return EdgeColoring(k4, {1, 2, 3, 3, 2, 1});
    }

    auto random_pool_graph(std::mt19937_64 & rng) -> Graph
    {
        static std::vector<Triangulation> pool = [] {
            std::vector<Triangulation> p;
            for (int n = 4; n <= 8; ++n)
                for (auto & t : generate(n))
                    p.push_back(t);
            return p;
        }();
        auto & t = pool[rng() % pool.size()];
        return oracle::random_subgraph(t.graph(), 0.5 + 0.5 * (rng() % 2), rng);
    }

    /// Every picker (one edge per class) when there are at most `limit`.
    auto all_pickers_reach(const EdgeColoring & col, int k, long limit) -> std::optional<bool>
    {
        auto classes = col.classes();
        long total = 1;
        for (auto & c : classes) {
            total *= static_cast<long>(c.size());
            if (total > limit)
                return std::nullopt;
        }
        std::vector<std::size_t> pick(classes.size(), 0);
        for (long it = 0; it < total; ++it) {
            std::vector<Edge> es;
            for (std::size_t c = 0; c < classes.size(); ++c)
                es.push_back(col.host().edge(classes[c][pick[c]]));
            if (oracle::matching_number(Graph(col.host().order(), es)) >= k)
                return true;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                if (++pick[c] < classes[c].size())
                    break;
                pick[c] = 0;
            }
        }
        return false;
    }
}

TEST_CASE("colouring validation")
{
    auto k4 = complete_graph(4);
    CHECK_THROWS_WITH_AS(EdgeColoring(k4, {0, 1, 2, 3, 2, 1}), doctest::Contains("colors must be 1-based contiguous"), InvalidArgument);
    CHECK_THROWS_WITH_AS(EdgeColoring(k4, {1, 1, 3, 3, 1, 1}), doctest::Contains("colors must be 1-based contiguous"), InvalidArgument);
    CHECK_THROWS_AS(EdgeColoring(k4, {1, 2, 3}), InvalidArgument);
    auto c = k4_pm();
    CHECK(c.num_colors() == 3);
    CHECK(c.classes() == std::vector<std::vector<int>>{{0, 5}, {1, 4}, {2, 3}});
    CHECK(EdgeColoring::all_distinct(k4).num_colors() == 6);
    CHECK(EdgeColoring::monochromatic(k4).num_colors() == 1);

    EdgeColoring shuffled(k4, {3, 1, 2, 2, 1, 3});
    CHECK(shuffled.canonical() == c);
    auto merged = c.merge(1, 3);
    CHECK(merged.num_colors() == 2);
    CHECK(merged.color_of(0) == merged.color_of(2));
    CHECK(merged.color_of(1) != merged.color_of(0));
    CHECK_THROWS(c.merge(1, 4));
    CHECK_THROWS(c.merge(2, 2));
}

TEST_CASE("max_rainbow_matching examples")
{
    auto pm = k4_pm();
    CHECK(max_rainbow_matching(pm).size == 1);
    CHECK_FALSE(has_rainbow_matching(pm, 2));
    CHECK(has_rainbow_matching(pm, 1));
    for (auto g : {complete_graph(4), octahedron(), cycle_graph(7), star_graph(4)}) {
        CHECK(max_rainbow_matching(EdgeColoring::all_distinct(g)).size == matching_number(g));
        CHECK(max_rainbow_matching(EdgeColoring::monochromatic(g)).size == 1);
    }
    auto edge = Graph(2, std::vector<Edge>{{0, 1}});
    CHECK(has_rainbow_matching(EdgeColoring::monochromatic(edge), 1));
    CHECK_THROWS_AS(has_rainbow_matching(pm, 0), InvalidArgument);
    CHECK_THROWS_AS(find_rainbow_matching(pm, 0), InvalidArgument);
    CHECK(max_rainbow_matching(EdgeColoring(Graph(3), {})).size == 0);
}

TEST_CASE("every 4-colouring of K4 has a rainbow 2K2")
{
    auto k4 = complete_graph(4);
    int checked = 0;
    oracle::for_each_coloring(6, [&](const std::vector<int> & cs, int c) {
        if (c != 4)
            return;
        ++checked;
        CHECK(has_rainbow_matching(EdgeColoring(k4, cs), 2));
    });
    CHECK(checked == 65);
}

TEST_CASE("max_rainbow_matching against brute force, with bounds")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 1500; ++trial) {
        auto g = random_pool_graph(rng);
        if (g.size() == 0)
            continue;
        auto col = oracle::random_coloring(g, 1 + static_cast<int>(rng() % 12), rng);
        auto r = max_rainbow_matching(col);
        CHECK(r.size == oracle::max_rainbow_matching(col));
        CHECK(r.size <= std::min(matching_number(g), col.num_colors()));
        CHECK(static_cast<int>(r.witness.size()) == r.size);
        CHECK(is_matching(g, r.witness));
        std::set<int> colors;
        for (auto & e : r.witness)
            colors.insert(col.color_of(g.edge_index(e.u, e.v)));
        CHECK(static_cast<int>(colors.size()) == r.size);
        for (int k = 1; k <= r.size + 1; ++k) {
            auto w = find_rainbow_matching(col, k);
            CHECK(w.has_value() == (k <= r.size));
            CHECK(has_rainbow_matching(col, k) == (k <= r.size));
        }
    }
}

TEST_CASE("merging colour classes never increases the rainbow matching number")
{
    std::mt19937_64 rng(22);
    int merges = 0;
    for (int trial = 0; trial < 1500; ++trial) {
        auto g = random_pool_graph(rng);
        if (g.size() < 2)
            continue;
        auto col = oracle::random_coloring(g, g.size(), rng);
        if (col.num_colors() < 2)
            continue;
        int a = 1 + static_cast<int>(rng() % col.num_colors());
        int b = 1 + static_cast<int>(rng() % col.num_colors());
        if (a == b)
            continue;
        auto merged = col.merge(a, b);
        CHECK(merged.num_colors() == col.num_colors() - 1);
        CHECK(max_rainbow_matching(merged).size <= max_rainbow_matching(col).size);
        ++merges;
    }
    CHECK(merges > 1000);
}

TEST_CASE("colour renaming leaves the rainbow matching number unchanged")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 800; ++trial) {
        auto g = random_pool_graph(rng);
        if (g.size() == 0)
            continue;
        auto col = oracle::random_coloring(g, 10, rng);
        std::vector<int> perm(col.num_colors());
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<int> renamed;
        for (int c : col.colors())
            renamed.push_back(perm[c - 1]);
        EdgeColoring other(g, renamed);
        CHECK(max_rainbow_matching(other).size == max_rainbow_matching(col).size);
        CHECK(other.canonical() == col.canonical());
    }
}

TEST_CASE("representative subgraphs")
{
    auto oct = octahedron();
    CHECK(representative_subgraph(EdgeColoring::all_distinct(oct)) == oct);
    auto mono = representative_subgraph(EdgeColoring::monochromatic(oct));
    CHECK(mono.size() == 1);
    CHECK(mono.edges().front() == oct.edge(0));

    auto pm = k4_pm();
    CHECK(representative_subgraph(pm).size() == 3);
    // all 2^3 pickers of the 3-PM colouring give nu <= 1
    for (int choice = 0; choice < 8; ++choice) {
        Picker picker = [choice](int color, std::span<const int> cls) { return cls[(choice >> (color - 1)) & 1]; };
        auto r = representative_subgraph(pm, picker);
        CHECK(r.size() == 3);
        CHECK(matching_number(r) <= 1);
    }
    Picker bad = [](int, std::span<const int>) { return 99; };
    CHECK_THROWS(representative_subgraph(pm, bad));
}

TEST_CASE("rainbow matchings are exactly matchings of some representative subgraph")
{
    std::mt19937_64 rng(24);
    int decided = 0;
    for (int trial = 0; trial < 600; ++trial) {
        auto g = random_pool_graph(rng);
        if (g.size() == 0)
            continue;
        auto col = oracle::random_coloring(g, 12, rng);
        for (int k = 1; k <= 4; ++k) {
            auto reach = all_pickers_reach(col, k, 4096);
            if (! reach)
                continue;
            ++decided;
            CHECK(*reach == has_rainbow_matching(col, k));
        }
        // any matching of the default representative graph is rainbow
        auto rep = representative_subgraph(col);
        CHECK(matching_number(rep) <= max_rainbow_matching(col).size);
    }
    CHECK(decided > 500);
}

TEST_CASE("certificates")
{
    auto k4 = complete_graph(4);
    RainbowCertificate good{k4, k4_pm(), 2};
    CHECK(verify_no_rainbow(good));
    CHECK(good.colors() == 3);
    CHECK_FALSE(verify_no_rainbow(RainbowCertificate{k4, EdgeColoring::all_distinct(k4), 2}));
    CHECK(verify_no_rainbow(RainbowCertificate{k4, EdgeColoring::all_distinct(k4), 3}));
    CHECK_THROWS_AS(verify_no_rainbow(RainbowCertificate{octahedron(), k4_pm(), 2}), InvalidCertificate);

    auto json = certificate_to_json(good);
    CHECK(json.find("\"verdict\":\"no_rainbow_kK2\"") != std::string::npos);
    CHECK(json.find("\"graph6\":\"C~\"") != std::string::npos);
    auto back = certificate_from_json(json);
    CHECK(back.graph == k4);
    CHECK(back.coloring == good.coloring);
    CHECK(back.k == 2);
    CHECK(verify_no_rainbow(back));

    CHECK_THROWS_AS(certificate_from_json("{"), InvalidCertificate);
    CHECK_THROWS_AS(certificate_from_json(R"({"graph6":"C~","k":2,"colors":3,"verdict":"no_rainbow_kK2"})"), InvalidCertificate);
    auto wrong_colors = json;
    wrong_colors.replace(wrong_colors.find("\"colors\":3"), 10, "\"colors\":4");
    CHECK_THROWS_AS(certificate_from_json(wrong_colors), InvalidCertificate);
    auto wrong_verdict = json;
    wrong_verdict.replace(wrong_verdict.find("no_rainbow_kK2"), 14, "rainbow_found!");
    CHECK_THROWS_AS(certificate_from_json(wrong_verdict), InvalidCertificate);

    // coloring stored next to the certificate
    auto dir = std::filesystem::temp_directory_path() / "rbtri_cert_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "k4.col") << write_coloring(good.coloring);
    auto linked = R"({"graph6":"C~","coloring_path":"k4.col","k":2,"colors":3,"verdict":"no_rainbow_kK2"})";
    auto parsed = certificate_from_json(linked, dir.string());
    CHECK(parsed.coloring == good.coloring);
    CHECK_THROWS_AS(certificate_from_json(linked, (dir / "missing").string()), InvalidCertificate);
}

TEST_CASE("coloring file format")
{
    auto k4 = complete_graph(4);
    auto text = write_coloring(k4_pm());
    CHECK(text.rfind("c 3\n0 1 1\n", 0) == 0);
    CHECK(parse_coloring(k4, text) == k4_pm());
    // lines may come in any order
    CHECK(parse_coloring(k4, "c 3\n2 3 1\n0 1 1\n1 3 2\n0 2 2\n0 3 3\n1 2 3\n") == k4_pm());

    CHECK_THROWS_WITH_AS(parse_coloring(k4, "c 3\n0 1 0\n2 3 1\n0 2 2\n1 3 2\n0 3 3\n1 2 3\n"),
            doctest::Contains("colors must be 1-based contiguous"), ParseError);
    CHECK_THROWS_AS(parse_coloring(k4, "0 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring(k4, "c 3\n0 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring(k4, "c 1\n0 1 1\n0 1 1\n0 2 1\n0 3 1\n1 2 1\n1 3 1\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring(cycle_graph(4), "c 1\n0 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring(k4, "c 2\n0 1 1\n2 3 1\n0 2 1\n1 3 1\n0 3 1\n1 2 1\n"), ParseError);
}

TEST_CASE("certificate round trip on random colourings")
{
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = random_pool_graph(rng);
        if (g.size() == 0)
            continue;
        auto col = oracle::random_coloring(g, 6, rng);
        int k = max_rainbow_matching(col).size + 1;
        RainbowCertificate cert{g, col, k};
        REQUIRE(verify_no_rainbow(cert));
        auto back = certificate_from_json(certificate_to_json(cert));
        CHECK(back.graph == g);
        CHECK(back.coloring == col);
        CHECK(verify_no_rainbow(back));
        CHECK(parse_coloring(g, write_coloring(col)) == col);
    }
}
