#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lorentz/core.hpp"

namespace lorentz {

/// Kernel exp(-a_1 (x_1*)^q - ... - a_n (x_n*)^q) with the weights kept in the
/// given order (no silent reordering) and q in (0, 2]: beyond 2 the
/// one-dimensional restriction already fails positive definiteness, so the
/// spec is rejected at construction.
struct KernelSpec {
    std::vector<double> weights;
    double q;

    KernelSpec(std::vector<double> a, double q_);
    std::size_t dim() const { return weights.size(); }

    double operator()(std::span<const double> x) const;
    /// long-double evaluation for certificate re-verification
    long double eval_ld(std::span<const double> x) const;
};

using PointSet = std::vector<std::vector<double>>;

struct GramReport {
    int m = 0;
    double min_eigenvalue = 0.0;
    double matrix_norm = 0.0;  // spectral norm, the scale for the thresholds
    PointSet witness_points;   // filled when min_eigenvalue < -tol * norm
    std::uint64_t seed = 0;
};

/// Gram matrix M_ij = k(x_i - x_j), smallest eigenvalue by a symmetric
/// eigensolver with residual check ||Mv - lambda v|| <= 1e-8 ||M||.
GramReport gram_min_eig(const KernelSpec& k, const PointSet& points,
                        double refute_tol = 1e-6);

enum class SchoenbergVerdict { PdConsistent, Refuted };

struct OracleReport {
    SchoenbergVerdict verdict = SchoenbergVerdict::PdConsistent;
    GramReport refutation;
    int trials_run = 0;
    std::uint64_t seed = 0;
};

/// Random point sets (sizes 5..40; Gaussian, lattice, and low-dimensional
/// samplers in rotation); refuted on the first certified negative eigenvalue.
/// Trials are independent; the first refutation in trial order wins whatever
/// the thread count.
OracleReport schoenberg_decision_oracle(const KernelSpec& k, int trials,
                                        std::uint64_t seed, int threads = 1);

struct WitnessResult {
    bool found = false;
    GramReport report;
    long evaluations_used = 0;
    std::string strategy;
};

/// Directed search for a negative-eigenvalue certificate: (1) scaled lattice
/// sets aligned with the max-norm kink planes, (2) random restarts with
/// coordinate descent on the minimum eigenvalue, (3) dimension-restricted
/// sets. A hit is re-verified in long double via the quadratic form before it
/// counts.
WitnessResult witness_search(const KernelSpec& k, long budget = 50000,
                             std::uint64_t seed = 12345);

}  // namespace lorentz
