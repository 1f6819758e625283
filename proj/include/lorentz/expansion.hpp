#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lorentz/rational.hpp"

namespace lorentz {

/// Hard cap for the 2^n subset enumeration in expand().
inline constexpr std::size_t kMaxExpandDim = 20;

/// Coefficients c_k = sum_{j=1..k} (-1)^{j-1} C(k-1, j-1) a_{n-k+j}, k = 1..n.
/// Binomials are exact big integers; the rational overload is exact end to end.
/// Accepts arbitrary real weights (no ordering or sign requirement).
std::vector<double> lemma1_coefficients(std::span<const double> a);
std::vector<Rational> lemma1_coefficients(std::span<const Rational> a);

/// c = sum_{k=1..n} (-1)^{k-1} C(n-1, k-1) a_k, the single constant relating
/// the weighted order-statistic sum to f(max|x_i|) off the coordinate planes.
/// Computed independently and cross-checked against c_n of lemma1_coefficients.
double prop1_constant(std::span<const double> a);
Rational prop1_constant(std::span<const Rational> a);

/// Evaluates sum_k c_k sum_{i_1<...<i_k} f(max(|x_{i_1}|, ..., |x_{i_k}|))
/// by enumerating all 2^n - 1 nonempty subsets with a shared running maximum
/// and compensated accumulation. Throws when n > kMaxExpandDim.
double expand(std::span<const double> a, const std::function<double(double)>& f,
              std::span<const double> x);

}  // namespace lorentz
