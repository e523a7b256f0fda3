#pragma once

#include <rbtri/graph.hpp>
#include <rbtri/planarity.hpp>

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace rbtri
{
    using Face = std::array<int, 3>;

    /// A plane triangulation: graph plus a consistently oriented face list.
    /// For an oriented face (a, b, c) the rotation at b has c right after a.
    class Triangulation
    {
    public:
        /// Validates that the faces form a triangulated sphere on 0..n-1.
        static auto from_faces(int n, std::vector<Face> faces) -> Triangulation;

        /// Embeds a maximal planar graph; throws InvalidArgument otherwise.
        static auto from_graph(const Graph & g) -> Triangulation;

        auto order() const -> int { return _graph.order(); }
        auto graph() const -> const Graph & { return _graph; }
        auto faces() const -> const std::vector<Face> & { return _faces; }
        auto rotation() const -> const RotationSystem & { return _rotation; }

        /// Neighbour following u in the rotation at v.
        auto successor(int v, int u) const -> int;
        auto predecessor(int v, int u) const -> int;

    private:
        Graph _graph;
        std::vector<Face> _faces;
        RotationSystem _rotation;
        std::vector<std::int8_t> _position;
    };

    /// Byte string identifying the isomorphism class of a triangulation.
    struct CanonicalCode
    {
        std::string bytes;

        auto operator<=>(const CanonicalCode &) const = default;
        auto hex() const -> std::string;
        static auto from_hex(std::string_view hex) -> CanonicalCode;
    };

    auto canonical_form(const Triangulation & t) -> CanonicalCode;

    /// Children obtained by inserting a new vertex (labelled n) of degree 3
    /// into a face, degree 4 across an edge, or degree 5 across two
    /// consecutive edges at a vertex.
    auto expansions(const Triangulation & t) -> std::vector<Triangulation>;

    /// Parents obtained by deleting vertex v (degree 3, 4 or 5) and
    /// re-triangulating its link without creating multiple edges. Vertices
    /// above v shift down by one.
    auto reductions(const Triangulation & t, int v) -> std::vector<Triangulation>;

    struct GenerateOptions
    {
        int max_order = 14;
        unsigned jobs = 1;
    };

    /// One representative per isomorphism class, sorted by canonical code.
    auto generate(int n, const GenerateOptions & options = {}) -> std::vector<Triangulation>;

    /// Brute-force ground truth for 4 <= n <= 8.
    auto oracle_generate(int n) -> std::vector<Triangulation>;

    inline constexpr const char * generator_version = "rbtri-gen-1";
}
