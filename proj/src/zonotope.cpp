#include "lorentz/zonotope.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lorentz {

// ------ vertex enumeration ------ //

VertexSet dual_extreme_points(std::span<const Rational> a) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("dual_extreme_points: empty weights");
    if (n > 8) throw std::invalid_argument("dual_extreme_points: n too large (max 8)");

    // distinct permutations via next_permutation on the ascending multiset;
    // sign patterns only over nonzero entries, so no duplicates arise at all
    std::vector<Rational> perm(a.begin(), a.end());
    std::sort(perm.begin(), perm.end());
    VertexSet out;
    out.dim = n;
    do {
        std::vector<std::size_t> nz;
        for (std::size_t i = 0; i < n; ++i)
            if (perm[i] != 0) nz.push_back(i);
        const std::size_t patterns = std::size_t{1} << nz.size();
        for (std::size_t mask = 0; mask < patterns; ++mask) {
            RationalVector p(perm.begin(), perm.end());
            for (std::size_t b = 0; b < nz.size(); ++b)
                if ((mask >> b) & 1) p[nz[b]] = -p[nz[b]];
            out.points.push_back(std::move(p));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

VertexSet dual_extreme_points(const Weights& w) {
    if (!w.ordered) throw std::invalid_argument("dual_extreme_points: weights must be ordered");
    auto r = w.exact();
    return dual_extreme_points(std::span<const Rational>(r));
}

// ------ the permuted-triple face ------ //

namespace {

// exact angular order around the centroid in the (u, v) plane coordinates:
// half-plane first, then cross product
struct AngularLess {
    bool operator()(const std::pair<Rational, Rational>& p,
                    const std::pair<Rational, Rational>& q) const {
        const int hp = half(p), hq = half(q);
        if (hp != hq) return hp < hq;
        const Rational cross = p.first * q.second - p.second * q.first;
        return cross > 0;
    }
    static int half(const std::pair<Rational, Rational>& p) {
        if (p.second > 0 || (p.second == 0 && p.first > 0)) return 0;
        return 1;
    }
};

}  // namespace

PlanarFace permuted_triple_face(std::span<const Rational> a) {
    const std::size_t n = a.size();
    if (n < 3) throw std::invalid_argument("permuted_triple_face: need at least 3 weights");
    std::array<Rational, 3> tail{a[n - 3], a[n - 2], a[n - 1]};
    std::set<std::array<Rational, 3>> perms;
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end());
    do {
        perms.insert({tail[idx[0]], tail[idx[1]], tail[idx[2]]});
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (perms.size() == 1)
        throw std::invalid_argument("permuted_triple_face: all three values equal, face degenerates to a point");

    PlanarFace face;
    face.shape = perms.size() == 6 ? FaceShape::Hexagon : FaceShape::Triangle;
    // base point: fixed head, centroid of the permuting block in the tail
    face.origin.assign(a.begin(), a.end());
    const Rational mean = (tail[0] + tail[1] + tail[2]) / 3;
    face.origin[n - 3] = mean;
    face.origin[n - 2] = mean;
    face.origin[n - 1] = mean;
    for (int b = 0; b < 2; ++b) face.basis[b].assign(n, Rational(0));
    face.basis[0][n - 3] = 1;
    face.basis[0][n - 2] = -1;
    face.basis[1][n - 3] = 1;
    face.basis[1][n - 2] = 1;
    face.basis[1][n - 1] = -2;

    // plane coordinates of each vertex relative to the centroid, then the
    // exact angular sort fixes the cyclic order
    std::vector<std::pair<std::pair<Rational, Rational>, std::array<Rational, 3>>> tagged;
    for (const auto& p : perms) {
        Rational du = p[0] - mean, dv = p[1] - mean, dw = p[2] - mean;
        // inner products with the basis vectors (only the tail block is nonzero)
        Rational cu = du - dv;
        Rational cv = du + dv - 2 * dw;
        tagged.push_back({{cu, cv}, p});
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& l, const auto& r) { return AngularLess{}(l.first, r.first); });
    for (const auto& [coords, tailvals] : tagged) {
        RationalVector v(a.begin(), a.end());
        v[n - 3] = tailvals[0];
        v[n - 2] = tailvals[1];
        v[n - 1] = tailvals[2];
        face.vertices.push_back(std::move(v));
    }
    return face;
}

PlanarFace permuted_triple_face(const Weights& a) {
    if (!a.ordered) throw std::invalid_argument("permuted_triple_face: weights must be ordered");
    auto r = a.exact();
    return permuted_triple_face(std::span<const Rational>(r));
}

bool PlanarFace::verify_planar_convex() const {
    if (vertices.size() < 3) return false;
    const std::size_t n = origin.size();
    // plane membership: solve p - origin = cu * basis0 + cv * basis1 exactly
    std::vector<std::pair<Rational, Rational>> coords;
    for (const auto& p : vertices) {
        // the two basis vectors live in the last three coordinates; use those
        // rows to solve, then verify every coordinate
        const std::size_t i0 = n - 3, i1 = n - 2;
        Rational d0 = p[i0] - origin[i0], d1 = p[i1] - origin[i1];
        // [d0]   [ b0[i0] b1[i0] ] [cu]
        // [d1] = [ b0[i1] b1[i1] ] [cv]
        Rational det = basis[0][i0] * basis[1][i1] - basis[1][i0] * basis[0][i1];
        if (det == 0) return false;
        Rational cu = (d0 * basis[1][i1] - basis[1][i0] * d1) / det;
        Rational cv = (basis[0][i0] * d1 - d0 * basis[0][i1]) / det;
        for (std::size_t k = 0; k < n; ++k)
            if (p[k] - origin[k] != cu * basis[0][k] + cv * basis[1][k]) return false;
        coords.emplace_back(cu, cv);
    }
    // convex position in the stored cyclic order
    const std::size_t m = coords.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a2 = coords[i];
        const auto& b2 = coords[(i + 1) % m];
        const auto& c2 = coords[(i + 2) % m];
        Rational cross = (b2.first - a2.first) * (c2.second - b2.second) -
                         (b2.second - a2.second) * (c2.first - b2.first);
        if (cross <= 0) return false;
    }
    return true;
}

bool is_centrally_symmetric(const PlanarFace& face) {
    if (face.vertices.size() < 3)
        throw std::invalid_argument("is_centrally_symmetric: need at least 3 vertices");
    const std::size_t n = face.origin.size();
    RationalVector center(n, Rational(0));
    for (const auto& v : face.vertices)
        for (std::size_t k = 0; k < n; ++k) center[k] += v[k];
    const Rational m(face.vertices.size());
    std::set<RationalVector> vset(face.vertices.begin(), face.vertices.end());
    for (const auto& v : face.vertices) {
        RationalVector reflected(n);
        for (std::size_t k = 0; k < n; ++k) reflected[k] = 2 * center[k] / m - v[k];
        if (!vset.count(reflected)) return false;
    }
    return true;
}

// ------ generators and support ------ //

GeneratorSet zonotope_generators(std::span<const Rational> a) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("zonotope_generators: empty weights");
    for (std::size_t k = 0; k + 1 < n; ++k)
        if (a[k] < a[k + 1])
            throw std::invalid_argument("zonotope_generators: weights must be non-increasing");
    if (n >= 3) {
        const Rational gap = a[0] - a[1];
        for (std::size_t k = 1; k + 1 < n; ++k)
            if (a[k] - a[k + 1] != gap)
                throw std::invalid_argument(
                    "zonotope_generators: weights are not an exact arithmetic progression");
    }
    GeneratorSet out;
    out.dim = n;
    const Rational last = a[n - 1];
    if (last != 0) {
        for (std::size_t i = 0; i < n; ++i) {
            RationalVector g(n, Rational(0));
            g[i] = last;
            out.generators.push_back({std::move(g), 1});
        }
    }
    if (n >= 2) {
        const Rational half_beta = (a[n - 2] - a[n - 1]) / 2;
        if (half_beta != 0) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    RationalVector gp(n, Rational(0)), gm(n, Rational(0));
                    gp[i] = half_beta;
                    gp[j] = half_beta;
                    gm[i] = half_beta;
                    gm[j] = -half_beta;
                    out.generators.push_back({std::move(gp), 1});
                    out.generators.push_back({std::move(gm), 1});
                }
        }
    }
    return out;
}

GeneratorSet zonotope_generators(const Weights& w) {
    if (!w.ordered) throw std::invalid_argument("zonotope_generators: weights must be ordered");
    auto r = w.exact();
    return zonotope_generators(std::span<const Rational>(r));
}

Rational support_function(const GeneratorSet& gen, std::span<const Rational> x) {
    if (x.size() != gen.dim) throw std::invalid_argument("support_function: dimension mismatch");
    Rational acc = 0;
    for (const auto& g : gen.generators) {
        Rational dot = 0;
        for (std::size_t k = 0; k < x.size(); ++k) dot += g.direction[k] * x[k];
        if (dot < 0) dot = -dot;
        acc += g.multiplicity * dot;
    }
    return acc;
}

double support_function(const GeneratorSet& gen, std::span<const double> x) {
    auto r = rationals_from_doubles(x);
    return to_double(support_function(gen, std::span<const Rational>(r)));
}

std::string face_to_off(const PlanarFace& face) {
    std::ostringstream os;
    os << "OFF\n" << face.vertices.size() << " 1 0\n";
    for (const auto& v : face.vertices) {
        for (std::size_t k = 0; k < v.size(); ++k)
            os << (k ? " " : "") << to_double(v[k]);
        os << "\n";
    }
    os << face.vertices.size();
    for (std::size_t i = 0; i < face.vertices.size(); ++i) os << " " << i;
    os << "\n";
    return os.str();
}

}  // namespace lorentz
