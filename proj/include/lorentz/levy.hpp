#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lorentz/core.hpp"
#include "lorentz/quadrature.hpp"

namespace lorentz {

/// Density (without prefactor) of the two-variable max representation:
/// gamma(xi) = (|xi-1|^{-q} - |xi+1|^{-q}) / xi. Positive and even; integrable
/// around +-1 exactly when q < 1. Singular inputs (0, +-1) are rejected.
double levy_density_2max(const Exponent& q, double xi);

/// max(|x|,|y|)^q reconstructed by quadrature of
/// (1/2pi) cot(pi q/2) int |x + y xi|^q gamma(xi) dxi, q < 1.
/// The tail is folded onto (-1,1) by xi -> 1/xi (an exact symmetry of gamma)
/// and the |xi -+ 1|^{-q} endpoints are removed by power substitutions.
double max2_via_levy(const Exponent& q, double x, double y);

/// max(|x|,|y|) = (|x+y| + |x-y|)/2, exact.
double max2_q1(double x, double y);

/// Dyadic shell masses int_{2^{-j-1} <= |xi - 1| <= 2^{-j}} gamma around the
/// singular point, for j = first..last. Ratios tend to 2^{q-1}: a divergence
/// certificate when q > 1, a convergence one when q < 1.
std::vector<double> levy_mass_shells(const Exponent& q, int first_level, int last_level);

struct LevyAtom {
    std::vector<double> direction;
    double mass;
};

struct LevyPairComponent {
    int i, j;       // coordinate plane indices, i < j
    double coeff;
};

/// ||x||^q as atoms m |<x,dir>|^q plus pairwise max^q components, each pair
/// realized by the gamma density (q < 1, with `prefactor` = cot(pi q/2)/2pi)
/// or by the exact half-sum split (q = 1, prefactor 1/2).
struct LevyRepresentation {
    std::vector<LevyAtom> atoms;
    std::vector<LevyPairComponent> pair_components;
    double q = 1.0;
    double prefactor = 0.5;
    std::size_t dim = 0;
};

/// Requires q <= 1 and arithmetic-progression weights: atoms of mass a_n at
/// each basis direction, pair coefficient a_{n-1} - a_n for every i < j.
LevyRepresentation build_representation(const Weights& w, const Exponent& q,
                                        double rel_tol = 1e-9);

/// Sum of atom and pair terms; equals lorentz_qnorm(w, q, x)^q.
double eval_representation(const LevyRepresentation& rep, std::span<const double> x);

enum class DecisionRegime { SubOneArithmetic, AboveOneConstant };
enum class DecisionCriterion { Fourier, Smoothness };

struct EmbeddingDecision {
    bool verdict = false;
    DecisionRegime regime = DecisionRegime::SubOneArithmetic;
    double defect = 0.0;
    DecisionCriterion criterion_used = DecisionCriterion::Fourier;
    double tolerance = 0.0;  // resolved absolute tolerance (rel_tol * a_1)
};

/// max_k |(a_k - a_{k+1}) - (a_1 - a_2)|, zero for n <= 2.
double ap_defect(std::span<const double> a);
/// max_k |a_k - a_1|.
double constancy_defect(std::span<const double> a);

/// q <= 1: embeddable iff the weights are an arithmetic progression;
/// q > 1: iff constant. Even-integer q is routed to the smoothness criterion,
/// every other q to the Fourier one; the decision rule is identical.
EmbeddingDecision decide_embeddable(const Weights& w, const Exponent& q,
                                    double rel_tol = 1e-9);

/// |a/b - c/d| with a = a_1+..+a_{n-1}, b = a_n, c = a_2+..+a_n, d = a_1.
/// Zero iff the unit-sphere branches meet smoothly, i.e. iff a_1 = a_n.
double smoothness_defect(const Weights& w, const Exponent& q);

struct SequenceVerdict {
    bool verdict = false;
    double defect = 0.0;
    int probed = 0;
};

/// Infinite sequence space: embeddable iff the weights are constant. Probes
/// the generator (1-indexed) and fails on non-monotone or non-positive output.
SequenceVerdict decide_sequence_space(const std::function<double(int)>& gen,
                                      const Exponent& q, int probe,
                                      double rel_tol = 1e-9);

/// Weight function on (0,1) or (0,inf): positive, non-increasing, and with
/// unit integral on (0,1).
struct FunctionWeight {
    enum class Kind { Linear, Constant, Power, Custom };
    enum class Interval { Unit, HalfLine };

    Kind kind = Kind::Constant;
    Interval interval = Interval::Unit;
    double alpha = 0.0;   // Linear: w(t) = 1 + alpha/2 - alpha t, alpha in [0,2]
    double value = 1.0;   // Constant
    double expo = 1.0;    // Power: w(t) = expo * t^{expo-1}, 0 < expo <= 1
    std::function<double(double)> fn;  // Custom

    static FunctionWeight linear(double alpha);
    static FunctionWeight constant(double c, Interval where = Interval::Unit);
    static FunctionWeight power(double expo);
    static FunctionWeight custom(std::function<double(double)> f,
                                 Interval where = Interval::Unit);

    double operator()(double t) const;
};

/// Cell averages a_{n,k} = int_{(k-1)/n}^{k/n} w dt on (0,1) (unit cells
/// (k-1, k) on the half line); closed forms for the declared families,
/// adaptive quadrature otherwise.
Weights discretize_function_weight(const FunctionWeight& w, int n);

struct FunctionSpaceDecision {
    bool verdict = false;
    std::vector<std::pair<int, double>> level_defects;
    DecisionRegime regime = DecisionRegime::SubOneArithmetic;
    bool constancy_required = false;  // q > 1 or half-line interval
};

/// (0,1), q <= 1: embeddable iff every level discretizes to an arithmetic
/// progression (i.e. w is decreasing linear). (0,1), q > 1 and (0,inf), any q:
/// iff constant.
FunctionSpaceDecision decide_function_space(const FunctionWeight& w, const Exponent& q,
                                            std::span<const int> levels,
                                            double rel_tol = 1e-9);

}  // namespace lorentz
