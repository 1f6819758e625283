// Acceptance suite: every criterion prints one [PASS]/[FAIL] line; the exit
// code is the number of failures. An optional list of criterion numbers on
// the command line restricts the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lorentz/core.hpp"
#include "lorentz/expansion.hpp"
#include "lorentz/fourier.hpp"
#include "lorentz/levy.hpp"
#include "lorentz/posdef.hpp"
#include "lorentz/zonotope.hpp"

using namespace lorentz;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void fail(Outcome& o, const std::string& why) {
    o.pass = false;
    if (o.detail.empty()) o.detail = why;
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. expansion identity on 1000 random instances
Outcome criterion1() {
    Outcome o;
    std::mt19937_64 rng(20240001);
    std::normal_distribution<double> g(0.0, 2.0);
    const std::vector<std::function<double(double)>> fs = {
        [](double t) { return std::pow(t, 0.5); },
        [](double t) { return std::pow(t, 1.3); },
        [](double t) { return t * t; },
        [](double t) { return std::cos(t); },
    };
    double worst = 0.0;
    for (int inst = 0; inst < 1000; ++inst) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> a(n), x(n);
        for (auto& v : a) v = g(rng);
        for (auto& v : x) v = g(rng);
        const auto& f = fs[inst % fs.size()];
        auto xs = order_statistics(x);
        double lhs = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double term = a[k] * f(xs[k]);
            lhs += term;
            scale += std::abs(term);
        }
        const double rhs = expand(a, f, x);
        const double rel = std::abs(lhs - rhs) / std::max(scale, 1e-30);
        worst = std::max(worst, rel);
        if (rel > 1e-10) fail(o, "relative error " + fmt("%.3e", rel));
    }
    o.detail = "1000 instances, worst rel " + fmt("%.2e", worst);
    return o;
}

// ---------------------------------------------------------------------------
// 2. coefficient law for perturbed arithmetic weights, exact rationals
Outcome criterion2() {
    Outcome o;
    std::mt19937_64 rng(20240002);
    std::uniform_int_distribution<int> num(0, 12), den(1, 6);
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t n = 3 + rng() % 8;
        const Rational u(40 + num(rng), den(rng));
        const Rational alpha(num(rng), den(rng));
        const Rational beta(num(rng), den(rng));
        std::vector<Rational> a(n);
        for (std::size_t k = 0; k + 1 < n; ++k) a[k] = u - alpha * int(k);
        a[n - 1] = a[n - 2] - beta;
        const auto c = lemma1_coefficients(std::span<const Rational>(a));
        for (std::size_t k = 3; k <= n; ++k) {
            const Rational expected = (k % 2 == 0) ? beta - alpha : alpha - beta;
            if (c[k - 1] != expected) fail(o, "coefficient mismatch at k=" + std::to_string(k));
        }
    }
    o.detail = "200 weight vectors, exact equality for k >= 3";
    return o;
}

// ---------------------------------------------------------------------------
// 3. sign opposition of the transform at the two witness points
Outcome criterion3() {
    Outcome o;
    std::ostringstream d;
    for (double q : {0.5, 1.0, 1.5, 3.0}) {
        const double v1 = ft_max_formula(Exponent(q), FrequencyPoint({3, 1, 1}));
        const double v2 = ft_max_formula(Exponent(q), FrequencyPoint({3, 2, 2}));
        if (!(v1 * v2 < 0.0)) fail(o, "no opposition at q=" + fmt("%.1f", q));
        d << " q=" << q << ":" << (v1 > 0 ? "+-" : "-+");
    }
    o.detail = "signs" + d.str();
    return o;
}

// ---------------------------------------------------------------------------
// 4. distributional pairing oracle
Outcome criterion4() {
    Outcome o;
    const BumpSpec bumps[] = {
        {{3.0, 1.0, 1.0}, {0.2, 0.2, 0.2}},
        {{3.0, 2.0, 2.0}, {0.15, 0.15, 0.15}},
        {{2.5, 1.2, 0.7}, {0.15, 0.15, 0.15}},
    };
    double worst = 0.0;
    for (double q : {0.5, 1.0}) {
        for (const auto& bump : bumps) {
            const auto rep = ft_pairing_oracle(Exponent(q), bump);
            worst = std::max(worst, rep.rel_err);
            if (rep.rel_err > 1e-2)
                fail(o, "relative error " + fmt("%.3e", rep.rel_err) + " at q=" + fmt("%.1f", q));
        }
    }
    o.detail = "6 bump/exponent pairs, worst rel " + fmt("%.2e", worst);
    return o;
}

// ---------------------------------------------------------------------------
// 5. two-point reconstruction and divergence of the density mass
Outcome criterion5() {
    Outcome o;
    double worst = 0.0;
    for (double q : {0.3, 0.5, 0.9}) {
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const double x = -3.0 + 1.5 * i, y = -3.0 + 1.5 * j;
                const double got = max2_via_levy(Exponent(q), x, y);
                const double expected = std::pow(std::max(std::abs(x), std::abs(y)), q);
                if (expected == 0.0) {
                    if (got != 0.0) fail(o, "nonzero at the origin");
                    continue;
                }
                const double rel = std::abs(got - expected) / expected;
                worst = std::max(worst, rel);
                if (rel > 1e-4) fail(o, "reconstruction error " + fmt("%.3e", rel));
            }
    }
    // quartering refinements toward the singular point double the mass
    const auto shells = levy_mass_shells(Exponent(1.5), 2, 30);
    std::vector<double> cumulative;
    double acc = 0.0;
    for (std::size_t i = 0; i < shells.size(); ++i) {
        acc += shells[i];
        if (i % 2 == 0) cumulative.push_back(acc);  // every second shell = one quartering
    }
    int good = 0;
    for (std::size_t j = 3; j + 1 < cumulative.size(); ++j) {
        const double ratio = cumulative[j + 1] / cumulative[j];
        if (ratio >= 1.9 && ratio <= 2.4) ++good;
        else fail(o, "refinement ratio " + fmt("%.3f", ratio));
    }
    if (good < 10) fail(o, "only " + std::to_string(good) + " doubling refinements");
    o.detail = "75 grid points, worst rel " + fmt("%.2e", worst) + "; " +
               std::to_string(good) + " doubling refinements at q=1.5";
    return o;
}

// ---------------------------------------------------------------------------
// 6. exact half-sum split
Outcome criterion6() {
    Outcome o;
    std::mt19937_64 rng(20240006);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = u(rng), y = u(rng);
        const double got = max2_q1(x, y);
        const double expected = std::max(std::abs(x), std::abs(y));
        const double ulp = std::nextafter(expected, INFINITY) - expected;
        if (std::abs(got - expected) > ulp) fail(o, "off by more than one rounding");
    }
    o.detail = "10000 pairs within one rounding";
    return o;
}

// ---------------------------------------------------------------------------
// 7. representation certificate on random arithmetic weights
Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(20240007);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    std::normal_distribution<double> g(0.0, 1.5);
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const std::size_t n = 2 + rng() % 4;
        const double gap = u(rng), last = u(rng);
        std::vector<double> a(n);
        for (std::size_t k = 0; k < n; ++k) a[k] = last + gap * double(n - 1 - k);
        const Weights w = Weights::make_ordered(a);
        for (double q : {0.5, 1.0}) {
            const auto rep = build_representation(w, Exponent(q));
            for (int s = 0; s < 100; ++s) {
                std::vector<double> x(n);
                for (auto& v : x) v = g(rng);
                const double direct = std::pow(lorentz_qnorm(w, Exponent(q), x), q);
                const double via = eval_representation(rep, x);
                const double rel = std::abs(via - direct) / std::max(direct, 1e-12);
                worst = std::max(worst, rel);
                if (rel > 1e-3) fail(o, "reconstruction error " + fmt("%.3e", rel));
            }
        }
    }
    o.detail = "20 weight vectors x {0.5, 1} x 100 samples, worst rel " + fmt("%.2e", worst);
    return o;
}

// ---------------------------------------------------------------------------
// 8. decision tables
Outcome criterion8() {
    Outcome o;
    auto expect = [&](bool got, bool want, const std::string& what) {
        if (got != want) fail(o, what);
    };
    expect(decide_embeddable(Weights::make_ordered({3, 2, 1}), Exponent(0.5)).verdict, true,
           "(3,2,1) q=0.5");
    expect(decide_embeddable(Weights::make_ordered({4, 2, 1}), Exponent(1.0)).verdict, false,
           "(4,2,1) q=1");
    expect(decide_embeddable(Weights::make_ordered({2, 1}), Exponent(0.7)).verdict, true,
           "(2,1) q=0.7");
    expect(decide_embeddable(Weights::make_ordered({2, 2}), Exponent(1.7)).verdict, true,
           "(2,2) q=1.7");
    expect(decide_embeddable(Weights::make_ordered({2, 1}), Exponent(1.7)).verdict, false,
           "(2,1) q=1.7");
    expect(decide_embeddable(Weights::make_ordered({5, 4, 3}), Exponent(2.0)).verdict, false,
           "(5,4,3) q=2 (smoothness route)");
    expect(decide_embeddable(Weights::make_ordered({1, 1, 1}), Exponent(4.0)).verdict, true,
           "(1,1,1) q=4");

    const std::vector<int> levels{2, 3, 4, 5, 7};
    for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
        for (double q : {0.5, 1.0})
            expect(decide_function_space(FunctionWeight::linear(alpha), Exponent(q), levels)
                       .verdict,
                   true, "linear weight alpha=" + fmt("%.1f", alpha));
        expect(decide_function_space(FunctionWeight::linear(alpha), Exponent(1.5), levels)
                   .verdict,
               alpha == 0.0, "linear weight alpha=" + fmt("%.1f", alpha) + " q=1.5");
    }
    expect(decide_function_space(FunctionWeight::power(0.5), Exponent(1.0), levels).verdict,
           false, "power weight");
    expect(decide_function_space(
               FunctionWeight::constant(3.0, FunctionWeight::Interval::HalfLine),
               Exponent(0.5), levels)
               .verdict,
           true, "constant weight on the half line");
    expect(decide_sequence_space([](int) { return 2.0; }, Exponent(0.5), 24).verdict, true,
           "constant sequence");
    expect(decide_sequence_space([](int k) { return 1.0 / k; }, Exponent(0.5), 24).verdict,
           false, "harmonic sequence");
    o.detail = "all catalogued verdicts reproduced";
    return o;
}

// ---------------------------------------------------------------------------
// 9. zonotope support identity over exact rationals
Outcome criterion9() {
    Outcome o;
    std::mt19937_64 rng(20240009);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    int vectors = 0;
    for (int n = 1; n <= 5; ++n) {
        for (int a1 = 1; a1 <= 5; ++a1) {
            const int dmax = n > 1 ? (a1 - 1) / (n - 1) : 0;
            for (int d = 0; d <= dmax; ++d) {
                std::vector<Rational> a(n);
                for (int k = 0; k < n; ++k) a[k] = a1 - d * k;
                const auto gens = zonotope_generators(std::span<const Rational>(a));
                for (int s = 0; s < 1000; ++s) {
                    std::vector<Rational> x(n);
                    for (auto& v : x) v = Rational(num(rng), den(rng));
                    if (support_function(gens, std::span<const Rational>(x)) !=
                        lorentz_norm1_exact(a, x))
                        fail(o, "support identity broken");
                }
                ++vectors;
            }
        }
    }
    // hexagon classifier against the progression condition
    std::uniform_int_distribution<int> val(1, 9);
    int faces = 0;
    while (faces < 100) {
        std::vector<int> t{val(rng), val(rng), val(rng)};
        std::sort(t.begin(), t.end(), std::greater<>());
        if (t[0] == t[2]) continue;
        std::vector<Rational> a{Rational(t[0]), Rational(t[1]), Rational(t[2])};
        const auto face = permuted_triple_face(std::span<const Rational>(a));
        const bool sym = is_centrally_symmetric(face);
        const bool distinct = t[0] != t[1] && t[1] != t[2];
        if (distinct && sym != (t[0] - t[1] == t[1] - t[2]))
            fail(o, "hexagon symmetry mismatch");
        if (!distinct && (face.shape != FaceShape::Triangle || sym))
            fail(o, "triangle classification mismatch");
        ++faces;
    }
    o.detail = std::to_string(vectors) + " weight vectors x 1000 rational points exact; " +
               std::to_string(faces) + " face triples";
    return o;
}

// ---------------------------------------------------------------------------
// 10. positive-definiteness suite
Outcome criterion10() {
    Outcome o;
    std::mt19937_64 rng(20240010);
    struct Case {
        std::vector<double> a;
        double q;
    };
    // PD side: 200 mixed trials each, scaled threshold -1e-9 ||M||
    const Case pd_cases[] = {{{3, 2, 1}, 0.5}, {{1, 1, 1}, 1.7}, {{2, 1}, 1.0}};
    for (const auto& c : pd_cases) {
        const KernelSpec k(c.a, c.q);
        const std::size_t n = c.a.size();
        for (int trial = 0; trial < 200; ++trial) {
            const int m = 5 + int(rng() % 36);
            const double scale = std::exp(std::uniform_real_distribution<double>(
                std::log(0.005), std::log(4.0))(rng));
            PointSet pts(m, std::vector<double>(n));
            if (trial % 2 == 0) {
                std::normal_distribution<double> g(0.0, scale);
                for (auto& p : pts)
                    for (auto& v : p) v = g(rng);
            } else {
                std::uniform_int_distribution<int> lat(-2, 2);
                for (auto& p : pts)
                    for (auto& v : p) v = scale * lat(rng);
            }
            const auto rep = gram_min_eig(k, pts);
            if (rep.min_eigenvalue < -1e-9 * rep.matrix_norm)
                fail(o, "negative eigenvalue " + fmt("%.3e", rep.min_eigenvalue) +
                            " on a PD case");
        }
        if (schoenberg_decision_oracle(k, 200, 20240010).verdict != SchoenbergVerdict::PdConsistent)
            fail(o, "oracle refuted a PD case");
    }
    // refutation side: certified witnesses within the default budget
    const Case refuted[] = {{{1, 0, 0}, 1.0}, {{1, 0, 0}, 0.5}, {{4, 2, 1}, 1.0}};
    for (const auto& c : refuted) {
        const auto res = witness_search(KernelSpec(c.a, c.q), 50000, 12345);
        if (!res.found) {
            fail(o, "no witness for q=" + fmt("%.1f", c.q));
            continue;
        }
        const auto again = gram_min_eig(KernelSpec(c.a, c.q), res.report.witness_points);
        if (!(again.min_eigenvalue < -1e-6 * again.matrix_norm))
            fail(o, "witness did not re-verify");
    }
    o.detail = "3 PD kernels x 200 trials PSD; 3 refutation witnesses certified";
    return o;
}

// ---------------------------------------------------------------------------
// 11. smoothness defect and its slope oracle
Outcome criterion11() {
    Outcome o;
    std::mt19937_64 rng(20240011);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    int zero_cases = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t n = 2 + rng() % 5;
        std::vector<double> a(n);
        for (auto& v : a) v = u(rng);
        std::sort(a.begin(), a.end(), std::greater<>());
        const bool constant = inst % 3 == 0;
        if (constant) {
            std::fill(a.begin(), a.end(), a[0]);
            ++zero_cases;
        }
        const Weights w = Weights::make_ordered(a);
        for (double q : {1.5, 2.0, 4.0}) {
            const double defect = smoothness_defect(w, Exponent(q));
            if (constant && defect != 0.0) fail(o, "nonzero defect for constant weights");
            if (!constant && defect <= 0.0) fail(o, "zero defect for non-constant weights");

            double asum = 0, csum = 0;
            for (std::size_t k = 0; k + 1 < n; ++k) asum += a[k];
            for (std::size_t k = 1; k < n; ++k) csum += a[k];
            const double b = a[n - 1], d = a[0];
            const double xstar = std::pow(1.0 / (asum + b), 1.0 / q);
            auto branch = [&](double cx, double cy, double x) {
                return std::pow((1.0 - cx * std::pow(x, q)) / cy, 1.0 / q);
            };
            const double h = 1e-6 * xstar;
            const double slope_gap =
                std::abs((branch(asum, b, xstar + h) - branch(asum, b, xstar - h)) -
                         (branch(csum, d, xstar + h) - branch(csum, d, xstar - h))) /
                (2 * h);
            if (constant && slope_gap > 1e-5) fail(o, "slopes differ in the smooth case");
            if (!constant && slope_gap < 1e-7) fail(o, "slopes agree in the kinked case");
        }
    }
    o.detail = "100 weight vectors (" + std::to_string(zero_cases) +
               " constant) x q in {1.5, 2, 4}";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Entry entries[] = {
        {1, "expansion identity suite", criterion1},
        {2, "perturbed-progression coefficient law", criterion2},
        {3, "sign opposition of the max transform", criterion3},
        {4, "distributional pairing oracle", criterion4},
        {5, "two-point reconstruction and divergence", criterion5},
        {6, "exact half-sum split", criterion6},
        {7, "representation certificate", criterion7},
        {8, "decision tables", criterion8},
        {9, "zonotope support identity", criterion9},
        {10, "positive-definiteness suite", criterion10},
        {11, "smoothness criterion", criterion11},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& e : entries) {
        if (!wanted.empty() && !wanted.count(e.id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = e.run();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL", e.id,
                    e.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures;
}
