#pragma once

#include <rbtri/graph.hpp>

#include <optional>
#include <vector>

namespace rbtri
{
    /// Combinatorial embedding: for each vertex, its neighbours in cyclic
    /// order around it. Consistent orientation across vertices.
    struct RotationSystem
    {
        std::vector<std::vector<int>> order;
    };

    auto planar_embedding(const Graph & g) -> std::optional<RotationSystem>;
    auto is_planar(const Graph & g) -> bool;

    /// Planar, connected and exactly 3n-6 edges. Requires n >= 3.
    auto is_maximal_planar(const Graph & g) -> bool;

    /// Faces of a rotation system as vertex cycles. Face of dart u->v
    /// continues with v->w where w follows u in v's rotation.
    auto faces_of(const RotationSystem & rot) -> std::vector<std::vector<int>>;
}
