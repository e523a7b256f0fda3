#pragma once

#include <rbtri/graph.hpp>
#include <rbtri/rainbow.hpp>
#include <rbtri/triangulation.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rbtri
{
    /// Node budget; searches count nodes rather than time so results are
    /// machine independent.
    struct Budget
    {
        std::uint64_t max_nodes = 1'000'000'000ULL;
    };

    enum class Engine
    {
        partition_dfs,
        representative_completion
    };

    auto engine_name(Engine e) -> std::string;
    auto parse_engine(std::string_view name) -> Engine;

    struct ArResult
    {
        std::string graph_id;
        int k = 0;
        /// maximum number of colours with no rainbow kK2
        int ar = 0;
        /// absent only when ar == 0 on a graph with edges
        std::optional<RainbowCertificate> certificate;
        Engine engine = Engine::representative_completion;
        std::uint64_t nodes = 0;
        /// nu(G) < k: no kK2 at all, ar = e(G)
        bool vacuous = false;
    };

    /// Exact ar(G, kK2) by DFS over set partitions of E(G) in restricted
    /// growth order. Practical for e(G) up to about 15.
    auto ar_partition_dfs(const Graph & g, int k, const Budget & budget = {}) -> ArResult;

    /// Exact ar(G, kK2) by enumerating representative subgraphs R with
    /// nu(R) <= k-1 and completing them to colourings, for c descending.
    auto ar_representative_completion(const Graph & g, int k, const Budget & budget = {}) -> ArResult;

    auto compute_ar(const Graph & g, int k, Engine engine, const Budget & budget = {}) -> ArResult;

    struct BoundedEdgesResult
    {
        int max_edges = 0;
        /// spanning subgraph attaining max_edges
        Graph witness;
        std::uint64_t nodes = 0;
    };

    /// Maximum edge count of a spanning subgraph F of G with nu(F) <= b.
    auto max_edges_matching_bounded(const Graph & g, int b, const Budget & budget = {}) -> BoundedEdgesResult;

    struct Decision
    {
        std::optional<EdgeColoring> coloring;
        std::uint64_t nodes = 0;
    };

    /// A surjective colouring with exactly `colors` colours and no rainbow
    /// kK2, or nothing if none exists. Throws BudgetExhausted.
    auto find_coloring_avoiding(const Graph & g, int k, int colors, Engine engine, const Budget & budget = {}) -> Decision;

    /// Cover-set colouring: a (k-2)-set S covering the most edges, those
    /// edges rainbow and every other edge one shared colour.
    auto cover_template_certificate(const Graph & g, int k) -> std::optional<RainbowCertificate>;

    struct LowerBoundOutcome
    {
        std::optional<RainbowCertificate> certificate;
        /// set when nothing was found because the budget ran out
        bool budget_exhausted = false;
        std::uint64_t nodes = 0;
    };

    /// A verified certificate with exactly colors_target colours: the cover
    /// template first, then the completion engine. Requires nu(T) >= k.
    auto lower_bound_certificate(const Triangulation & t, int k, int colors_target, const Budget & budget = {}) -> LowerBoundOutcome;

    struct PerGraphAr
    {
        CanonicalCode code;
        /// nu(T) < k: excluded from the class maximum
        bool skipped = false;
        /// bracket on ar(T, kK2); exact when equal
        int lower = 0;
        int upper = 0;
        bool inconclusive = false;
        std::uint64_t nodes = 0;
    };

    struct RbClassResult
    {
        int n = 0;
        int k = 0;
        bool inconclusive = false;
        /// exact when !inconclusive; otherwise rb lies in [rb_lower, rb_upper]
        int rb = 0;
        int rb_lower = 0;
        int rb_upper = 0;
        CanonicalCode extremal_graph;
        std::optional<RainbowCertificate> extremal_certificate;
        std::vector<PerGraphAr> per_graph;
        std::uint64_t nodes = 0;
    };

    struct RbOptions
    {
        Engine engine = Engine::representative_completion;
        Budget budget;
        unsigned jobs = 1;
        /// compute ar exactly for every triangulation instead of only
        /// deciding the class maximum
        bool exact_per_graph = false;
    };

    /// rb(T_n, kK2) over the given triangulations (generated when empty).
    auto rb_class(int n, int k, const RbOptions & options = {}, std::span<const Triangulation> triangulations = {}) -> RbClassResult;
}
