#include <doctest.h>

#include <cmath>
#include <random>

#include "lorentz/core.hpp"
#include "lorentz/expansion.hpp"

using namespace lorentz;

namespace {

double lhs_order_statistic_sum(std::span<const double> a,
                               const std::function<double(double)>& f,
                               std::span<const double> x) {
    auto s = order_statistics(x);
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * f(s[k]);
    return acc;
}

}  // namespace

TEST_CASE("binomials are exact") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(19, 9) == 92378);
    CHECK(binomial(63, 31) == BigInt("916312070471295267"));
    CHECK(binomial(4, 7) == 0);
}

TEST_CASE("coefficient spot values") {
    std::vector<double> w1{1, 0, 0};
    CHECK(lemma1_coefficients(std::span<const double>(w1)) == std::vector<double>{0, 0, 1});
    std::vector<double> w2{3, 2, 1};
    CHECK(lemma1_coefficients(std::span<const double>(w2)) == std::vector<double>{1, 1, 0});
}

TEST_CASE("arithmetic weights with a perturbed last gap") {
    // exact rational arithmetic: c_k = (-1)^k (beta - alpha) for k >= 3
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 7;
        Rational u(20 + static_cast<int>(rng() % 10), den(rng));
        Rational alpha(std::abs(num(rng)), den(rng));
        Rational beta(std::abs(num(rng)), den(rng));
        std::vector<Rational> a(n);
        for (std::size_t k = 0; k + 1 < n; ++k) a[k] = u - alpha * static_cast<int>(k);
        a[n - 1] = a[n - 2] - beta;
        auto c = lemma1_coefficients(std::span<const Rational>(a));
        for (std::size_t k = 3; k <= n; ++k) {
            Rational expected = (k % 2 == 0) ? (beta - alpha) : (alpha - beta);
            CHECK(c[k - 1] == expected);
        }
    }
}

TEST_CASE("alternating binomial sums vanish exactly") {
    for (unsigned k = 2; k <= 18; ++k) {
        BigInt s1 = 0;
        for (unsigned j = 1; j <= k; ++j) {
            BigInt t = binomial(k - 1, j - 1);
            s1 += (j % 2 == 1) ? t : -t;
        }
        CHECK(s1 == 0);
    }
    for (unsigned k = 3; k <= 18; ++k) {
        BigInt s2 = 0;
        for (unsigned j = 1; j <= k; ++j) {
            BigInt t = binomial(k - 1, j - 1) * (j - 1);
            s2 += (j % 2 == 0) ? t : -t;
        }
        CHECK(s2 == 0);
    }
}

TEST_CASE("expand spot values") {
    std::vector<double> w{2, 1};
    std::vector<double> x{1, -3};
    auto id = [](double t) { return t; };
    CHECK(expand(w, id, x) == doctest::Approx(7.0).epsilon(1e-15));

    auto zero = [](double) { return 0.0; };
    std::vector<double> w3{5, 4, 1};
    std::vector<double> x3{0.3, -2, 7};
    CHECK(expand(w3, zero, x3) == 0.0);

    std::vector<double> big(kMaxExpandDim + 1, 1.0);
    CHECK_THROWS_AS(expand(big, id, big), std::invalid_argument);
}

TEST_CASE("expansion identity on random data") {
    std::mt19937_64 rng(303);
    std::normal_distribution<double> g(0.0, 2.0);
    std::vector<std::function<double(double)>> fs = {
        [](double t) { return std::pow(t, 0.7); },
        [](double t) { return t * t; },
        [](double t) { return std::cos(t); },
    };
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> a(n), x(n);
        for (auto& v : a) v = g(rng);  // arbitrary reals: no ordering, signs allowed
        for (auto& v : x) v = g(rng);
        for (const auto& f : fs) {
            const double lhs = lhs_order_statistic_sum(a, f, x);
            const double rhs = expand(a, f, x);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("induction step: a new largest coordinate adds one term") {
    std::mt19937_64 rng(404);
    std::normal_distribution<double> g(0.0, 1.5);
    auto f = [](double t) { return std::sqrt(t) + t * t; };
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 7;
        std::vector<double> a(n), x(n);
        for (auto& v : a) v = g(rng);
        for (auto& v : x) v = g(rng);
        double xmax = 0.0;
        for (double v : x) xmax = std::max(xmax, std::abs(v));
        const double x0 = xmax + std::abs(g(rng)) + 0.1;
        const double a0 = g(rng);

        std::vector<double> a2{a0};
        a2.insert(a2.end(), a.begin(), a.end());
        std::vector<double> x2{x0};
        x2.insert(x2.end(), x.begin(), x.end());
        const double grown = expand(a2, f, x2);
        const double base = expand(a, f, x);
        CHECK(grown - base == doctest::Approx(a0 * f(x0)).epsilon(1e-9));
    }
}

TEST_CASE("single-constant reduction") {
    std::vector<double> e1{1, 0, 0, 0};
    CHECK(prop1_constant(std::span<const double>(e1)) == 1.0);

    // arithmetic progressions collapse the constant to zero for n >= 3
    auto ap = rationals_from_doubles(std::vector<double>{7, 5, 3, 1});
    CHECK(prop1_constant(std::span<const Rational>(ap)) == 0);

    std::mt19937_64 rng(505);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        std::vector<double> a(n);
        for (auto& v : a) v = g(rng);
        auto c = lemma1_coefficients(std::span<const double>(a));
        CHECK(prop1_constant(std::span<const double>(a)) ==
              doctest::Approx(c.back()).epsilon(1e-12));
    }
}
