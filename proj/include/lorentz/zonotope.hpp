#pragma once

#include <span>
#include <string>
#include <vector>

#include "lorentz/core.hpp"
#include "lorentz/rational.hpp"

namespace lorentz {

using RationalVector = std::vector<Rational>;

/// Extreme points of the dual ball: the deduplicated signed permutations of
/// the weight vector. Exact rational coordinates.
struct VertexSet {
    std::vector<RationalVector> points;
    std::size_t dim = 0;
};

VertexSet dual_extreme_points(std::span<const Rational> a);
VertexSet dual_extreme_points(const Weights& w);

enum class FaceShape { Triangle, Hexagon };

/// Vertices in a common 2-plane, cyclically ordered; the affine basis of the
/// plane is stored with a base point.
struct PlanarFace {
    std::vector<RationalVector> vertices;
    RationalVector origin;
    std::array<RationalVector, 2> basis;
    FaceShape shape = FaceShape::Hexagon;

    /// Exact re-check of the stored invariants: every vertex lies in
    /// origin + span(basis) and the polygon is in convex position.
    bool verify_planar_convex() const;
};

/// The face spanned by all distinct permutations of the last three weight
/// coordinates (the rest stay fixed): hexagonal when the three values are
/// distinct, triangular when exactly two coincide, and degenerate (rejected)
/// when all three are equal.
PlanarFace permuted_triple_face(std::span<const Rational> a);
PlanarFace permuted_triple_face(const Weights& a);

/// Exact reflection test through the vertex centroid.
bool is_centrally_symmetric(const PlanarFace& face);

struct Generator {
    RationalVector direction;
    int multiplicity = 1;
};

/// Segments [-g_j, g_j] whose Minkowski sum has the q = 1 Lorentz norm as its
/// support function.
struct GeneratorSet {
    std::vector<Generator> generators;
    std::size_t dim = 0;
};

/// Requires exactly arithmetic weights. Generators a_n e_i plus
/// (beta/2)(e_i +- e_j) for i < j, beta = a_{n-1} - a_n.
GeneratorSet zonotope_generators(std::span<const Rational> a);
GeneratorSet zonotope_generators(const Weights& w);

Rational support_function(const GeneratorSet& gen, std::span<const Rational> x);
double support_function(const GeneratorSet& gen, std::span<const double> x);

/// Plain-text OFF export of a planar face (vertex list plus one polygon).
std::string face_to_off(const PlanarFace& face);

}  // namespace lorentz
