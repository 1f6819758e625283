#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <vector>

namespace lorentz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient C(n, k); zero when k > n.
BigInt binomial(unsigned n, unsigned k);

/// Every double is a dyadic rational, so this conversion is exact.
Rational rational_from_double(double v);

std::vector<Rational> rationals_from_doubles(std::span<const double> v);

double to_double(const Rational& r);

/// "p/q" form, "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace lorentz
