#include "lorentz/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace lorentz {

static void validate_weights(const std::vector<double>& vals, bool ordered) {
    if (vals.empty()) throw std::invalid_argument("weights: need at least one entry");
    bool any_positive = false;
    for (double a : vals) {
        if (!std::isfinite(a)) throw std::invalid_argument("weights: entries must be finite");
        if (a < 0.0) throw std::invalid_argument("weights: entries must be nonnegative");
        if (a > 0.0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("weights: all entries are zero");
    if (ordered) {
        for (std::size_t k = 0; k + 1 < vals.size(); ++k)
            if (vals[k] < vals[k + 1])
                throw std::invalid_argument("weights: not non-increasing");
    }
}

Weights::Weights(std::vector<double> vals, bool ordered_flag)
    : values(std::move(vals)), ordered(ordered_flag) {
    validate_weights(values, ordered);
}

Weights Weights::make_ordered(std::vector<double> vals) {
    return Weights(std::move(vals), true);
}

Weights Weights::make_unordered(std::vector<double> vals) {
    return Weights(std::move(vals), false);
}

Exponent::Exponent(double q_) : q(q_) {
    if (!(q > 0.0) || !std::isfinite(q))
        throw std::invalid_argument("exponent: q must be a positive finite real");
}

bool Exponent::is_even_integer(double tol) const {
    double nearest = 2.0 * std::round(q / 2.0);
    return nearest >= 2.0 && std::abs(q - nearest) <= tol;
}

SampleVector order_statistics(std::span<const double> x) {
    SampleVector s(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]))
            throw std::invalid_argument("sample vector: entries must be finite");
        s[i] = std::abs(x[i]);
    }
    std::stable_sort(s.begin(), s.end(), [](double a, double b) { return a > b; });
    return s;
}

double lorentz_qnorm(const Weights& w, const Exponent& q, std::span<const double> x) {
    if (w.size() != x.size())
        throw std::invalid_argument("lorentz_qnorm: dimension mismatch");
    if (!w.ordered)
        throw std::invalid_argument("lorentz_qnorm: weights must be ordered");
    SampleVector s = order_statistics(x);
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
        acc += w.values[k] * std::pow(s[k], q.q);
    return std::pow(acc, 1.0 / q.q);
}

Rational lorentz_norm1_exact(std::span<const Rational> a, std::span<const Rational> x) {
    if (a.size() != x.size())
        throw std::invalid_argument("lorentz_norm1_exact: dimension mismatch");
    std::vector<Rational> s(x.begin(), x.end());
    for (auto& v : s)
        if (v < 0) v = -v;
    std::stable_sort(s.begin(), s.end(), [](const Rational& u, const Rational& v) { return u > v; });
    Rational acc = 0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += a[k] * s[k];
    return acc;
}

}  // namespace lorentz
