#pragma once

#include <rbtri/graph.hpp>
#include <rbtri/matching.hpp>
#include <rbtri/triangulation.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rbtri
{
    struct AuditReport
    {
        std::string claim;
        std::string universe;
        int universe_size = 0;
        int instances_checked = 0;
        std::vector<std::string> failures;
        std::vector<std::string> notes;
        /// run outside the range the claim is made for; failures are findings
        bool exploration = false;

        auto passed() const -> bool
        {
            return failures.empty() && instances_checked == universe_size;
        }

        auto to_json() const -> std::string;
    };

    /// Every vertex-deleted subgraph of every T in T_n is Hamiltonian.
    /// The claim is made for 5 <= n <= 7; other n run as exploration.
    auto check_hypohamiltonian(int n, std::span<const Triangulation> ts = {}) -> AuditReport;

    /// vertex_connectivity(T) >= 3 for every T in T_n.
    auto check_three_connected(int n, std::span<const Triangulation> ts = {}) -> AuditReport;

    struct ClosureCounts
    {
        /// e_G(H) with H = G[V(M)]
        int e_h = 0;
        /// e_G(V(H), R) with R = V(G) \ V(M)
        int e_cross = 0;
        /// e_G(R)
        int e_r = 0;
    };

    auto matching_closure_counts(const Graph & g, std::span<const Edge> m) -> ClosureCounts;

    struct CountingOptions
    {
        /// exhaustive over all maximal scenarios up to this order
        int exhaustive_max_order = 8;
        int samples = 200;
        std::uint64_t seed = 0;
    };

    /// For subgraphs G of T that contain a (k-1)K2 but no kK2, and every
    /// (k-1)K2 M of G: e_G(R) = 0, e_G(V(H),R) <= 2n-4, e_G(H) <= 6k-12
    /// (k >= 3) and e(G) <= 2n+6k-16 (k >= 5). Needs nu(T) >= k-1.
    auto check_counting_bounds(const Triangulation & t, int k, const CountingOptions & options = {}) -> AuditReport;

    /// `count` pairwise edge-disjoint matchings of size k, if they exist.
    auto edge_disjoint_matchings(const Graph & g, int k, int count) -> std::optional<std::vector<Matching>>;

    /// Random colourings of T: whenever the representative subgraph holds two
    /// edge-disjoint kK2 M1, M2 and T has an edge missing V(M1 u M2), the
    /// colouring must contain a rainbow (k+1)K2.
    auto check_matching_claim(const Triangulation & t, int k, int samples, std::uint64_t seed = 0) -> AuditReport;
}
