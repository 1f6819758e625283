#include "lorentz/rational.hpp"

#include <stdexcept>

namespace lorentz {

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (unsigned j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;  // exact: r is C(n-k+j, j) after this step
    }
    return r;
}

Rational rational_from_double(double v) {
    return Rational(v);
}

std::vector<Rational> rationals_from_doubles(std::span<const double> v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (double d : v) out.emplace_back(d);
    return out;
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace lorentz
