#include "lorentz/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "lorentz/quadrature.hpp"

namespace lorentz {

// c_k for k = 1..n; the inner alternating sum runs over the last k weights.
template <typename T>
static std::vector<T> coefficients_impl(std::span<const T> a) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("lemma1_coefficients: empty weights");
    std::vector<T> c(n);
    for (std::size_t k = 1; k <= n; ++k) {
        T acc = T(0);
        for (std::size_t j = 0; j < k; ++j) {
            BigInt b = binomial(static_cast<unsigned>(k - 1), static_cast<unsigned>(j));
            T term;
            if constexpr (std::is_same_v<T, Rational>) {
                term = Rational(b) * a[n - k + j];
            } else {
                term = b.convert_to<double>() * a[n - k + j];
            }
            acc += (j % 2 == 0) ? term : -term;
        }
        c[k - 1] = acc;
    }
    return c;
}

std::vector<double> lemma1_coefficients(std::span<const double> a) {
    return coefficients_impl<double>(a);
}

std::vector<Rational> lemma1_coefficients(std::span<const Rational> a) {
    return coefficients_impl<Rational>(a);
}

template <typename T>
static T prop1_impl(std::span<const T> a) {
    const std::size_t n = a.size();
    if (n == 0) throw std::invalid_argument("prop1_constant: empty weights");
    T acc = T(0);
    for (std::size_t k = 0; k < n; ++k) {
        BigInt b = binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(k));
        T term;
        if constexpr (std::is_same_v<T, Rational>) {
            term = Rational(b) * a[k];
        } else {
            term = b.convert_to<double>() * a[k];
        }
        acc += (k % 2 == 0) ? term : -term;
    }
    return acc;
}

double prop1_constant(std::span<const double> a) {
    return prop1_impl<double>(a);
}

Rational prop1_constant(std::span<const Rational> a) {
    return prop1_impl<Rational>(a);
}

namespace {

// Depth-first subset walk sharing the running maximum along each prefix:
// every nonempty subset is visited once, and extending a subset only ever
// grows the maximum, so no recomputation is needed.
struct SubsetWalker {
    std::span<const double> absx;
    std::span<const double> coeff;   // c_1..c_n
    const std::function<double(double)>& f;
    KahanSum acc;

    SubsetWalker(std::span<const double> ax, std::span<const double> c,
                 const std::function<double(double)>& fn)
        : absx(ax), coeff(c), f(fn) {}

    void walk(std::size_t next, double running_max, std::size_t count) {
        for (std::size_t i = next; i < absx.size(); ++i) {
            double m = std::max(running_max, absx[i]);
            acc.add(coeff[count] * f(m));
            walk(i + 1, m, count + 1);
        }
    }
};

}  // namespace

double expand(std::span<const double> a, const std::function<double(double)>& f,
              std::span<const double> x) {
    if (a.size() != x.size())
        throw std::invalid_argument("expand: dimension mismatch");
    if (a.size() > kMaxExpandDim)
        throw std::invalid_argument("expand: n too large for 2^n subset enumeration");
    std::vector<double> c = lemma1_coefficients(a);
    std::vector<double> absx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) absx[i] = std::abs(x[i]);
    SubsetWalker walker(absx, c, f);
    walker.walk(0, 0.0, 0);
    return walker.acc.value();
}

}  // namespace lorentz
