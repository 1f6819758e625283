#include "lorentz/levy.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lorentz/errors.hpp"

namespace lorentz {

// ------ the two-variable max density ------ //

namespace {

// gamma with its removable singularity at 0 filled in by the series branch;
// the quadrature paths use this, the public op keeps the strict domain
double gamma_extended(double q, double xi) {
    if (std::abs(xi) < 0.05) {
        // odd binomial-series terms of (1-xi)^{-q} - (1+xi)^{-q}, divided by xi;
        // the direct formula cancels catastrophically here
        const double b3 = q * (q + 1) * (q + 2) / 6.0;
        const double b5 = b3 * (q + 3) * (q + 4) / 20.0;
        const double b7 = b5 * (q + 5) * (q + 6) / 42.0;
        const double s = xi * xi;
        return 2.0 * (q + s * (b3 + s * (b5 + s * b7)));
    }
    return (std::pow(std::abs(xi - 1.0), -q) - std::pow(std::abs(xi + 1.0), -q)) / xi;
}

}  // namespace

double levy_density_2max(const Exponent& q, double xi) {
    if (xi == 0.0 || xi == 1.0 || xi == -1.0)
        throw std::invalid_argument("levy_density_2max: singular input");
    return gamma_extended(q.q, xi);
}

// ------ max of two via the representing measure ------ //

namespace {

// gamma(xi) * (|x + y xi|^q + |y + x xi|^q): the full-line integral folded
// onto (-1,1) by xi -> 1/xi, which the density absorbs exactly.
struct FoldedIntegrand {
    double q, x, y;

    double weight_part(double xi) const {
        return std::pow(std::abs(x + y * xi), q) + std::pow(std::abs(y + x * xi), q);
    }
    double operator()(double xi) const { return gamma_extended(q, xi) * weight_part(xi); }
};

}  // namespace

double max2_via_levy(const Exponent& q, double x, double y) {
    if (!(q.q < 1.0))
        throw std::invalid_argument("max2_via_levy: requires q < 1");
    if (x == 0.0 && y == 0.0) return 0.0;

    const double qq = q.q;
    FoldedIntegrand body{qq, x, y};

    // panel boundaries: singular endpoints, their substitution collars, and the
    // |...|^q kinks at -x/y and -y/x when they fall inside
    std::set<double> cuts{-1.0, -0.5, 0.5, 1.0};
    if (y != 0.0) {
        double k = -x / y;
        if (std::abs(k) < 1.0) cuts.insert(k);
    }
    if (x != 0.0) {
        double k = -y / x;
        if (std::abs(k) < 1.0) cuts.insert(k);
    }
    std::vector<double> b(cuts.begin(), cuts.end());

    const double p = 1.0 / (1.0 - qq);      // substitution xi = 1 -+ t^p
    QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-10;

    KahanSum acc;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const double lo = b[i], hi = b[i + 1];
        if (hi == 1.0) {
            // int_lo^1: t = (1 - xi)^{1-q} removes the (1-xi)^{-q} blowup
            auto f = [&](double t) {
                const double tp = std::pow(t, p);
                const double xi = 1.0 - tp;
                const double tqp = std::pow(t, qq * p);
                return (1.0 - std::pow(1.0 + xi, -qq) * tqp) * body.weight_part(xi) /
                       (xi * (1.0 - qq));
            };
            acc.add(integrate_adaptive(f, 0.0, std::pow(1.0 - lo, 1.0 - qq), opt));
        } else if (lo == -1.0) {
            auto f = [&](double t) {
                const double tp = std::pow(t, p);
                const double xi = -1.0 + tp;
                const double tqp = std::pow(t, qq * p);
                return (std::pow(1.0 - xi, -qq) * tqp - 1.0) * body.weight_part(xi) /
                       (xi * (1.0 - qq));
            };
            acc.add(integrate_adaptive(f, 0.0, std::pow(1.0 + hi, 1.0 - qq), opt));
        } else {
            auto f = [&](double xi) { return body(xi); };
            acc.add(integrate_adaptive(f, lo, hi, opt));
        }
    }

    const double prefactor = std::cos(0.5 * M_PI * qq) / std::sin(0.5 * M_PI * qq) / (2.0 * M_PI);
    return prefactor * acc.value();
}

double max2_q1(double x, double y) {
    return 0.5 * (std::abs(x + y) + std::abs(x - y));
}

std::vector<double> levy_mass_shells(const Exponent& q, int first_level, int last_level) {
    if (first_level < 0 || last_level < first_level)
        throw std::invalid_argument("levy_mass_shells: bad level range");
    QuadratureOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-10;
    std::vector<double> masses;
    for (int j = first_level; j <= last_level; ++j) {
        const double outer = std::ldexp(1.0, -j);      // 2^{-j}
        const double inner = 0.5 * outer;
        auto f = [&](double xi) { return levy_density_2max(q, xi); };
        double m = integrate_adaptive(f, 1.0 + inner, 1.0 + outer, opt) +
                   integrate_adaptive(f, 1.0 - outer, 1.0 - inner, opt);
        masses.push_back(m);
    }
    return masses;
}

// ------ representations ------ //

double ap_defect(std::span<const double> a) {
    if (a.size() <= 2) return 0.0;
    const double first_gap = a[0] - a[1];
    double d = 0.0;
    for (std::size_t k = 0; k + 1 < a.size(); ++k)
        d = std::max(d, std::abs((a[k] - a[k + 1]) - first_gap));
    return d;
}

double constancy_defect(std::span<const double> a) {
    double d = 0.0;
    for (double v : a) d = std::max(d, std::abs(v - a[0]));
    return d;
}

LevyRepresentation build_representation(const Weights& w, const Exponent& q, double rel_tol) {
    if (!w.ordered) throw std::invalid_argument("build_representation: weights must be ordered");
    if (q.q > 1.0) throw std::invalid_argument("build_representation: requires q <= 1");
    const std::size_t n = w.size();
    if (ap_defect(w.values) > rel_tol * w.values[0])
        throw std::invalid_argument("build_representation: weights are not an arithmetic progression");

    LevyRepresentation rep;
    rep.q = q.q;
    rep.dim = n;
    rep.prefactor = q.q < 1.0
                        ? std::cos(0.5 * M_PI * q.q) / std::sin(0.5 * M_PI * q.q) / (2.0 * M_PI)
                        : 0.5;
    const double atom_mass = w.values[n - 1];
    if (atom_mass > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> dir(n, 0.0);
            dir[i] = 1.0;
            rep.atoms.push_back({std::move(dir), atom_mass});
        }
    }
    if (n >= 2) {
        const double beta = w.values[n - 2] - w.values[n - 1];
        if (beta != 0.0) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    rep.pair_components.push_back(
                        {static_cast<int>(i), static_cast<int>(j), beta});
        }
    }
    return rep;
}

double eval_representation(const LevyRepresentation& rep, std::span<const double> x) {
    if (x.size() != rep.dim)
        throw std::invalid_argument("eval_representation: dimension mismatch");
    const Exponent q(rep.q);
    KahanSum acc;
    for (const auto& atom : rep.atoms) {
        double dot = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) dot += atom.direction[k] * x[k];
        acc.add(atom.mass * std::pow(std::abs(dot), rep.q));
    }
    for (const auto& pc : rep.pair_components) {
        const double xi = x[pc.i], xj = x[pc.j];
        double m = rep.q < 1.0 ? max2_via_levy(q, xi, xj) : max2_q1(xi, xj);
        acc.add(pc.coeff * m);
    }
    return acc.value();
}

// ------ decision procedures ------ //

EmbeddingDecision decide_embeddable(const Weights& w, const Exponent& q, double rel_tol) {
    if (!w.ordered) throw std::invalid_argument("decide_embeddable: weights must be ordered");
    EmbeddingDecision d;
    d.tolerance = rel_tol * w.values[0];
    d.criterion_used =
        q.is_even_integer() ? DecisionCriterion::Smoothness : DecisionCriterion::Fourier;
    if (q.q <= 1.0) {
        d.regime = DecisionRegime::SubOneArithmetic;
        d.defect = ap_defect(w.values);
    } else {
        d.regime = DecisionRegime::AboveOneConstant;
        d.defect = constancy_defect(w.values);
    }
    d.verdict = d.defect <= d.tolerance;
    return d;
}

double smoothness_defect(const Weights& w, const Exponent& q) {
    if (!(q.q > 1.0)) throw std::invalid_argument("smoothness_defect: requires q > 1");
    if (!w.ordered) throw std::invalid_argument("smoothness_defect: weights must be ordered");
    const std::size_t n = w.size();
    if (n < 2) throw std::invalid_argument("smoothness_defect: requires n >= 2");
    const double b = w.values[n - 1], d = w.values[0];
    if (b <= 0.0 || d <= 0.0)
        throw std::invalid_argument("smoothness_defect: zero weight among a_1, a_n");
    double a = 0.0, c = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) a += w.values[k];
    for (std::size_t k = 1; k < n; ++k) c += w.values[k];
    return std::abs(a / b - c / d);
}

SequenceVerdict decide_sequence_space(const std::function<double(int)>& gen,
                                      const Exponent& /*q*/, int probe, double rel_tol) {
    if (probe < 3) throw std::invalid_argument("decide_sequence_space: probe must be >= 3");
    std::vector<double> a(probe);
    for (int k = 0; k < probe; ++k) {
        a[k] = gen(k + 1);
        if (!(a[k] > 0.0) || !std::isfinite(a[k]))
            throw std::invalid_argument("decide_sequence_space: weights must be positive");
        if (k > 0 && a[k] > a[k - 1] * (1.0 + 1e-12))
            throw std::invalid_argument("decide_sequence_space: non-monotone generator output");
    }
    // a decreasing arithmetic progression of positives is constant or finite,
    // so the infinite space embeds only for constant weights, whatever q is
    SequenceVerdict v;
    v.probed = probe;
    v.defect = constancy_defect(a);
    v.verdict = v.defect <= rel_tol * a[0];
    return v;
}

// ------ function weights ------ //

FunctionWeight FunctionWeight::linear(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 2.0))
        throw std::invalid_argument("function weight: linear slope must lie in [0, 2]");
    FunctionWeight w;
    w.kind = Kind::Linear;
    w.interval = Interval::Unit;
    w.alpha = alpha;
    return w;
}

FunctionWeight FunctionWeight::constant(double c, Interval where) {
    if (!(c > 0.0)) throw std::invalid_argument("function weight: constant must be positive");
    if (where == Interval::Unit && std::abs(c - 1.0) > 1e-12)
        throw std::invalid_argument("function weight: constant on (0,1) must integrate to 1");
    FunctionWeight w;
    w.kind = Kind::Constant;
    w.interval = where;
    w.value = c;
    return w;
}

FunctionWeight FunctionWeight::power(double expo) {
    if (!(expo > 0.0 && expo <= 1.0))
        throw std::invalid_argument("function weight: power exponent must lie in (0, 1]");
    FunctionWeight w;
    w.kind = Kind::Power;
    w.interval = Interval::Unit;
    w.expo = expo;
    return w;
}

FunctionWeight FunctionWeight::custom(std::function<double(double)> f, Interval where) {
    FunctionWeight w;
    w.kind = Kind::Custom;
    w.interval = where;
    w.fn = std::move(f);
    // sample check: positive and non-increasing
    const double hi = where == Interval::Unit ? 1.0 : 64.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 64; ++i) {
        double t = hi * i / 65.0;
        double v = w.fn(t);
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("function weight: not positive on samples");
        if (v > prev * (1.0 + 1e-9))
            throw std::invalid_argument("function weight: not non-increasing on samples");
        prev = v;
    }
    if (where == Interval::Unit) {
        QuadratureOptions opt;
        opt.abs_tol = 1e-9;
        opt.rel_tol = 1e-9;
        double total = integrate_adaptive(w.fn, 1e-12, 1.0, opt);
        if (std::abs(total - 1.0) > 1e-6)
            throw std::invalid_argument("function weight: integral over (0,1) is not 1");
    }
    return w;
}

double FunctionWeight::operator()(double t) const {
    switch (kind) {
        case Kind::Linear: return 1.0 + 0.5 * alpha - alpha * t;
        case Kind::Constant: return value;
        case Kind::Power: return expo * std::pow(t, expo - 1.0);
        case Kind::Custom: return fn(t);
    }
    return 0.0;
}

Weights discretize_function_weight(const FunctionWeight& w, int n) {
    if (n < 1) throw std::invalid_argument("discretize_function_weight: n must be >= 1");
    std::vector<double> a(n);
    if (w.interval == FunctionWeight::Interval::Unit) {
        for (int k = 1; k <= n; ++k) {
            const double lo = double(k - 1) / n, hi = double(k) / n;
            switch (w.kind) {
                case FunctionWeight::Kind::Linear:
                    a[k - 1] = (1.0 + 0.5 * w.alpha) / n -
                               w.alpha * (2.0 * k - 1.0) / (2.0 * double(n) * n);
                    break;
                case FunctionWeight::Kind::Constant:
                    a[k - 1] = 1.0 / n;
                    break;
                case FunctionWeight::Kind::Power:
                    a[k - 1] = std::pow(hi, w.expo) - std::pow(lo, w.expo);
                    break;
                case FunctionWeight::Kind::Custom: {
                    QuadratureOptions opt;
                    opt.abs_tol = 1e-12;
                    opt.rel_tol = 1e-10;
                    a[k - 1] = integrate_adaptive(w.fn, std::max(lo, 1e-13), hi, opt);
                    break;
                }
            }
        }
    } else {
        for (int k = 1; k <= n; ++k) {
            switch (w.kind) {
                case FunctionWeight::Kind::Constant:
                    a[k - 1] = w.value;
                    break;
                case FunctionWeight::Kind::Custom: {
                    QuadratureOptions opt;
                    opt.abs_tol = 1e-12;
                    opt.rel_tol = 1e-10;
                    a[k - 1] = integrate_adaptive(w.fn, std::max(double(k - 1), 1e-13),
                                                  double(k), opt);
                    break;
                }
                default:
                    throw std::invalid_argument(
                        "discretize_function_weight: family not defined on (0, inf)");
            }
        }
    }
    return Weights::make_ordered(std::move(a));
}

FunctionSpaceDecision decide_function_space(const FunctionWeight& w, const Exponent& q,
                                            std::span<const int> levels, double rel_tol) {
    if (levels.empty())
        throw std::invalid_argument("decide_function_space: need at least one level");
    for (int n : levels)
        if (n < 2 || n > 64)
            throw std::invalid_argument("decide_function_space: levels must lie in {2..64}");
    FunctionSpaceDecision d;
    d.regime = q.q <= 1.0 ? DecisionRegime::SubOneArithmetic : DecisionRegime::AboveOneConstant;
    d.constancy_required =
        q.q > 1.0 || w.interval == FunctionWeight::Interval::HalfLine;
    d.verdict = true;
    for (int n : levels) {
        Weights a = discretize_function_weight(w, n);
        const double defect = d.constancy_required ? constancy_defect(a.values)
                                                   : ap_defect(a.values);
        d.level_defects.emplace_back(n, defect);
        if (defect > rel_tol * a.values[0]) d.verdict = false;
    }
    return d;
}

}  // namespace lorentz
