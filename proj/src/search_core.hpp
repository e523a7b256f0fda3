#pragma once

// Allocation-free helpers for the exhaustive searches. Graphs here have at
// most 64 vertices and the searched edge sets at most 64 edges, so vertex
// sets, edge subsets and colour sets are all single 64-bit words.

#include <rbtri/graph.hpp>

#include <array>
#include <cstdint>
#include <span>

namespace rbtri::detail
{
    using EdgeMask = std::uint64_t;

    /// Maximum matching on the edges of `edges` selected by `subset`.
    /// On return mate[v] is v's partner or -1. Returns the matching size.
    auto small_matching(int n, std::span<const VertexSet> edges, EdgeMask subset, std::array<int, 64> & mate) -> int;

    auto small_matching_number(int n, std::span<const VertexSet> edges, EdgeMask subset) -> int;

    /// Is there a rainbow matching of `need` edges among the first `count`
    /// coloured edges, avoiding `blocked` vertices and `blocked_classes`?
    auto rainbow_extends(const VertexSet * masks, const int * classes, int count, int need,
            VertexSet blocked, std::uint64_t blocked_classes) -> bool;

    /// Thrown inside searches when the node budget runs out; callers convert
    /// it into BudgetExhausted with their own bracketing bounds.
    struct OutOfNodes
    {
    };

    struct NodeCounter
    {
        std::uint64_t nodes = 0;
        std::uint64_t limit = 0;

        void tick()
        {
            if (++nodes > limit)
                throw OutOfNodes{};
        }
    };
}
