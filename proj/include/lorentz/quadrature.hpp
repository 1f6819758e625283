#pragma once

#include <functional>

namespace lorentz {

/// Compensated (Kahan) accumulator for long reductions.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

using ScalarFn = std::function<double(double)>;

/// 15-point Gauss-Kronrod rule on [a, b]; *err receives the usual
/// scaled |K15 - G7| estimate.
double gauss_kronrod_15(const ScalarFn& f, double a, double b, double* err);

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 20000;
};

/// Adaptive bisection on top of gauss_kronrod_15. Throws NumericError when the
/// interval budget runs out before the tolerance is met.
double integrate_adaptive(const ScalarFn& f, double a, double b,
                          const QuadratureOptions& opt = {});

/// Fixed composite 16-point Gauss-Legendre over `panels` equal panels.
/// No error estimate; callers verify by doubling the panel count.
double integrate_composite_gl(const ScalarFn& f, double a, double b, int panels);

}  // namespace lorentz
