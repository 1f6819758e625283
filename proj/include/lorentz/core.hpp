#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lorentz/rational.hpp"

namespace lorentz {

/// Finite nonnegative weight sequence a_1..a_n with ordering metadata.
/// Invariants: n >= 1, all entries finite and >= 0, not all zero,
/// and a_k >= a_{k+1} when `ordered` is set.
struct Weights {
    std::vector<double> values;
    bool ordered = false;

    Weights(std::vector<double> vals, bool ordered_flag);

    /// Validates the non-increasing invariant.
    static Weights make_ordered(std::vector<double> vals);
    static Weights make_unordered(std::vector<double> vals);

    std::size_t size() const { return values.size(); }
    std::vector<Rational> exact() const { return rationals_from_doubles(values); }
};

/// The exponent q > 0 with its regime predicates.
struct Exponent {
    double q;

    explicit Exponent(double q_);

    /// Distance of q to {2, 4, 6, ...} within tol. Even integers must be
    /// routed around the Gamma pole in the Fourier constant.
    bool is_even_integer(double tol = 1e-9) const;

    /// q <= 1: the functional is a q-norm rather than a norm.
    bool subadditive_regime() const { return q <= 1.0; }
};

using SampleVector = std::vector<double>;

/// (x_1*, ..., x_n*): the absolute values sorted non-increasing.
/// Ties keep the original index order (stable sort).
SampleVector order_statistics(std::span<const double> x);

/// (a_1 (x_1*)^q + ... + a_n (x_n*)^q)^(1/q). Requires ordered weights of
/// matching dimension.
double lorentz_qnorm(const Weights& w, const Exponent& q, std::span<const double> x);

/// Exact weighted sum a_1 x_1* + ... + a_n x_n* (the q = 1 norm) over rationals.
Rational lorentz_norm1_exact(std::span<const Rational> a, std::span<const Rational> x);

}  // namespace lorentz
