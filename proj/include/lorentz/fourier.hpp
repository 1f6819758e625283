#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lorentz/core.hpp"
#include "lorentz/quadrature.hpp"

namespace lorentz {

inline constexpr double kDefaultGTol = 1e-8;

/// A frequency point with certified distances to the excluded hyperplanes:
/// the coordinate planes {xi_k = 0} and the diagonal planes {<delta, xi> = 0},
/// delta ranging over all sign vectors.
struct FrequencyPoint {
    std::vector<double> xi;
    double margin_axes = 0.0;
    double margin_diag = 0.0;

    explicit FrequencyPoint(std::vector<double> coords);

    std::size_t dim() const { return xi.size(); }
    bool in_G(double tol = kDefaultGTol) const {
        return margin_axes > tol && margin_diag > tol;
    }
};

/// One-dimensional transform u = (f(t) (sgn t)^{n-1})^ restricted to the reals
/// away from 0. When `imaginary_part` is set, fn stores u/i (the odd case);
/// the sign-sum evaluator folds the missing i back into the parity prefactor.
struct OneDimTransform {
    std::function<double(double)> fn;
    double singularity_order = 0.0;  // |y|^{-s} blowup at 0
    double decay_order = 0.0;        // |y|^{-d} decay at infinity
    bool imaginary_part = false;
};

/// c_q = 2^{q+1} sqrt(pi) Gamma((q+1)/2) / Gamma(-q/2), via log-gamma and the
/// reflection formula for the negative argument. q must not be an even integer
/// (pole of the reciprocal Gamma).
double cq(const Exponent& q);

/// u(y) = c_q |y|^{-1-q}, the transform of |t|^q. Built in for odd n only:
/// for even n the sgn factor changes the constant, which is not supplied here.
OneDimTransform u_for_power(const Exponent& q, int n);

/// Sign-sum evaluation off the coordinate planes:
///   i^{n-1} / (2 xi_1...xi_n) * sum_delta delta_1...delta_n s u(s),
/// s = <delta, xi>. Real for odd n with a real u and for even n with an
/// imaginary-part u; every other combination throws.
double ft_max_formula(const FrequencyPoint& xi, const OneDimTransform& u,
                      double g_tol = kDefaultGTol);

/// Convenience: builds u_for_power(q, dim) internally (odd dimension only).
double ft_max_formula(const Exponent& q, const FrequencyPoint& xi,
                      double g_tol = kDefaultGTol);

struct Box3 {
    std::array<double, 3> lo;
    std::array<double, 3> hi;
};

struct SignSample {
    std::array<double, 3> xi;
    double value;
    int sign;
};

struct SignScanResult {
    std::vector<SignSample> samples;
    bool has_positive = false;
    bool has_negative = false;
};

/// Cell-centered grid scan over the box, filtered to G. `threads` only
/// partitions the work; the sample order is fixed by the grid.
SignScanResult sign_scan(const Exponent& q, const Box3& box, int grid,
                         double g_tol = kDefaultGTol, int threads = 1);

/// Product of three scaled bumps exp(-1/(1-t^2)); support box must stay
/// strictly inside G.
struct BumpSpec {
    std::array<double, 3> center;
    std::array<double, 3> radius;
};

struct PairingReport {
    double lhs = 0.0;        // integral of the sign-sum formula against the bump
    double rhs = 0.0;        // integral of max^q against the bump transform
    double rel_err = 0.0;
    double tail_bound = 0.0; // certified bound on the truncated part of rhs
    double truncation = 0.0; // where the layer integral was cut
};

/// Distributional-pairing oracle for n = 3: checks
///   <ft_max_formula, bump> == <max^q, bump^>
/// with both sides computed by independent routes. The right side is reduced
/// exactly to a one-dimensional layer integral
///   -q int_0^inf t^{q-1} I_1(t) I_2(t) I_3(t) dt,
/// I_k(t) = int b_k(xi) (2 sin(t xi)/xi) dxi, truncated with a tail bound from
/// integration by parts against the bump's derivatives.
PairingReport ft_pairing_oracle(const Exponent& q, const BumpSpec& bump,
                                double rel_budget = 1e-3);

// -- bump internals, exposed for the tests --

/// exp(-1/(1-t^2)) on (-1,1), zero outside; j-th derivative via the exact
/// polynomial recurrence (log-space guarded near the endpoints).
double bump_value(double t);
double bump_derivative(double t, int j);

}  // namespace lorentz
