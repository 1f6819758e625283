#include "lorentz/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <random>
#include <regex>
#include <sstream>

#include "lorentz/core.hpp"
#include "lorentz/errors.hpp"
#include "lorentz/expansion.hpp"
#include "lorentz/fourier.hpp"
#include "lorentz/io.hpp"
#include "lorentz/levy.hpp"
#include "lorentz/posdef.hpp"
#include "lorentz/zonotope.hpp"

namespace lorentz {

namespace {

using Json = nlohmann::ordered_json;

struct CommonOpts {
    double tol = 1e-9;
    double g_tol = kDefaultGTol;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_path;
    std::string format = "json";
    int threads = 1;
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--tol", c.tol, "relative decision tolerance");
    cmd->add_option("--g-tol", c.g_tol, "membership tolerance for the set G");
    cmd->add_option("--seed", c.seed, "RNG seed (fallback: LORENTZ_EMBED_SEED, then 12345)")
        ->each([&c](const std::string&) { c.seed_set = true; });
    cmd->add_option("--out", c.out_path, "write the report (or scan CSV) to this path");
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", c.threads, "worker threads (output independent of N)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp field");
}

std::uint64_t resolve_seed(const CommonOpts& c) {
    if (c.seed_set) return c.seed;
    if (const char* env = std::getenv("LORENTZ_EMBED_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 12345;
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Json common_config(const CommonOpts& c) {
    Json j;
    j["tol"] = c.tol;
    j["g_tol"] = c.g_tol;
    j["seed"] = resolve_seed(c);
    j["format"] = c.format;
    j["threads"] = c.threads;
    if (!c.out_path.empty()) j["out"] = c.out_path;
    return j;
}

void emit(std::ostream& out, const CommonOpts& c, const std::string& command, Json config,
          Json result) {
    Json doc;
    doc["schema"] = "1";
    doc["command"] = command;
    Json merged = common_config(c);
    for (auto& [k, v] : config.items()) merged[k] = v;
    doc["config"] = merged;
    if (!c.no_timestamp) doc["timestamp"] = iso_now();
    doc["result"] = std::move(result);
    const std::string text = doc.dump(2) + "\n";
    out << text;
    if (!c.out_path.empty() && c.format == "json") write_text_file(c.out_path, text);
}

const char* regime_name(DecisionRegime r) {
    return r == DecisionRegime::SubOneArithmetic ? "q<=1-AP" : "q>1-constant";
}

const char* criterion_name(DecisionCriterion c) {
    return c == DecisionCriterion::Fourier ? "fourier" : "smoothness";
}

Json decision_json(const EmbeddingDecision& d) {
    Json j;
    j["verdict"] = d.verdict ? "yes" : "no";
    j["regime"] = regime_name(d.regime);
    j["defect"] = d.defect;
    j["criterion_used"] = criterion_name(d.criterion_used);
    j["tolerance"] = d.tolerance;
    return j;
}

// tolerates the compact weight-spec form {kind:linear,alpha:1}
Json parse_weight_spec(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error&) {
        std::string patched = std::regex_replace(
            text, std::regex(R"(([:{,]\s*)([A-Za-z_][A-Za-z0-9_]*))"), "$1\"$2\"");
        return Json::parse(patched);
    }
}

FunctionWeight weight_from_spec(const Json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    FunctionWeight::Interval where = FunctionWeight::Interval::Unit;
    if (spec.contains("interval")) {
        const std::string iv = spec["interval"].get<std::string>();
        if (iv == "halfline" || iv == "(0,inf)") where = FunctionWeight::Interval::HalfLine;
        else if (iv != "unit" && iv != "(0,1)")
            throw std::invalid_argument("weight-spec: unknown interval " + iv);
    }
    if (kind == "linear") return FunctionWeight::linear(spec.value("alpha", 0.0));
    if (kind == "constant") return FunctionWeight::constant(spec.value("value", 1.0), where);
    if (kind == "power") return FunctionWeight::power(spec.value("expo", 1.0));
    throw std::invalid_argument("weight-spec: unknown kind " + kind);
}

std::vector<Rational> random_rational_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::vector<Rational> x(n);
    for (auto& v : x) v = Rational(num(rng), den(rng));
    return x;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fourier transforms of order statistics and isometric embeddings of "
                 "Lorentz spaces into L_q"};
    app.name("lorentz-embed");
    app.require_subcommand(1);

    int exit_code = 0;

    // ---- coeffs ----
    {
        auto* cmd = app.add_subcommand("coeffs", "expansion coefficients c_1..c_n");
        auto opts = std::make_shared<CommonOpts>();
        auto wfile = std::make_shared<std::string>();
        auto exact = std::make_shared<bool>(false);
        cmd->add_option("--weights", *wfile, "weight file (JSON array or CSV)")->required();
        cmd->add_flag("--exact", *exact, "print exact rationals");
        add_common(cmd, *opts);
        cmd->callback([&, opts, wfile, exact] {
            auto vals = read_weight_file(*wfile);
            Json cfg;
            cfg["weights_file"] = *wfile;
            cfg["weights"] = vals;
            cfg["exact"] = *exact;
            Json res;
            if (*exact) {
                auto r = rationals_from_doubles(vals);
                auto c = lemma1_coefficients(std::span<const Rational>(r));
                Json arr = Json::array();
                for (const auto& v : c) arr.push_back(to_string(v));
                res["coefficients"] = arr;
                res["prop1_constant"] = to_string(prop1_constant(std::span<const Rational>(r)));
            } else {
                res["coefficients"] = lemma1_coefficients(std::span<const double>(vals));
                res["prop1_constant"] = prop1_constant(std::span<const double>(vals));
            }
            emit(out, *opts, "coeffs", cfg, res);
        });
    }

    // ---- expand-check ----
    {
        auto* cmd = app.add_subcommand("expand-check",
                                       "both sides of the max-expansion identity");
        auto opts = std::make_shared<CommonOpts>();
        auto wfile = std::make_shared<std::string>();
        auto xs = std::make_shared<std::vector<double>>();
        auto fname = std::make_shared<std::string>("pow");
        auto qval = std::make_shared<double>(1.0);
        cmd->add_option("--weights", *wfile)->required();
        cmd->add_option("--x", *xs, "sample vector")->required()->delimiter(',');
        cmd->add_option("--f", *fname, "test function: pow | square | cos")
            ->check(CLI::IsMember({"pow", "square", "cos"}));
        cmd->add_option("--q", *qval, "exponent for --f pow");
        add_common(cmd, *opts);
        cmd->callback([&, opts, wfile, xs, fname, qval] {
            auto vals = read_weight_file(*wfile);
            if (vals.size() != xs->size())
                throw std::invalid_argument("expand-check: weights and x differ in length");
            std::function<double(double)> f;
            if (*fname == "pow") {
                double q = *qval;
                f = [q](double t) { return std::pow(t, q); };
            } else if (*fname == "square") {
                f = [](double t) { return t * t; };
            } else {
                f = [](double t) { return std::cos(t); };
            }
            auto xstar = order_statistics(*xs);
            double lhs = 0.0;
            for (std::size_t k = 0; k < vals.size(); ++k) lhs += vals[k] * f(xstar[k]);
            double rhs = expand(vals, f, *xs);
            Json cfg;
            cfg["weights_file"] = *wfile;
            cfg["weights"] = vals;
            cfg["x"] = *xs;
            cfg["f"] = *fname;
            cfg["q"] = *qval;
            Json res;
            res["lhs"] = lhs;
            res["rhs"] = rhs;
            res["abs_diff"] = std::abs(lhs - rhs);
            res["rel_diff"] = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
            emit(out, *opts, "expand-check", cfg, res);
        });
    }

    // ---- ft ----
    {
        auto* ft = app.add_subcommand("ft", "Fourier transform of the max function");
        ft->require_subcommand(1);

        {
            auto* cmd = ft->add_subcommand("eval", "sign-sum formula at one point");
            auto opts = std::make_shared<CommonOpts>();
            auto qv = std::make_shared<double>();
            auto xi = std::make_shared<std::vector<double>>();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--xi", *xi, "frequency point (odd dimension)")
                ->required()
                ->delimiter(',');
            add_common(cmd, *opts);
            cmd->callback([&, opts, qv, xi] {
                Exponent q(*qv);
                FrequencyPoint p(*xi);
                double v = ft_max_formula(q, p, opts->g_tol);
                Json cfg;
                cfg["q"] = *qv;
                cfg["xi"] = *xi;
                Json res;
                res["value"] = v;
                res["margin_axes"] = p.margin_axes;
                res["margin_diag"] = p.margin_diag;
                res["cq"] = cq(q);
                emit(out, *opts, "ft eval", cfg, res);
            });
        }
        {
            auto* cmd = ft->add_subcommand("scan", "signed grid scan over a box in R^3");
            auto opts = std::make_shared<CommonOpts>();
            auto qv = std::make_shared<double>();
            auto boxv = std::make_shared<std::vector<double>>();
            auto grid = std::make_shared<int>(12);
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--box", *boxv, "lo,hi (all axes) or lo1,hi1,lo2,hi2,lo3,hi3")
                ->required()
                ->delimiter(',');
            cmd->add_option("--grid", *grid, "cells per axis")->check(CLI::PositiveNumber);
            add_common(cmd, *opts);
            cmd->callback([&, opts, qv, boxv, grid] {
                Box3 box{};
                if (boxv->size() == 2) {
                    for (int a = 0; a < 3; ++a) {
                        box.lo[a] = (*boxv)[0];
                        box.hi[a] = (*boxv)[1];
                    }
                } else if (boxv->size() == 6) {
                    for (int a = 0; a < 3; ++a) {
                        box.lo[a] = (*boxv)[2 * a];
                        box.hi[a] = (*boxv)[2 * a + 1];
                    }
                } else {
                    throw std::invalid_argument("ft scan: --box needs 2 or 6 numbers");
                }
                auto scan = sign_scan(Exponent(*qv), box, *grid, opts->g_tol, opts->threads);
                std::ostringstream csv;
                csv << "xi1,xi2,xi3,value\n";
                for (const auto& s : scan.samples)
                    csv << s.xi[0] << "," << s.xi[1] << "," << s.xi[2] << "," << s.value
                        << "\n";
                Json cfg;
                cfg["q"] = *qv;
                cfg["box"] = *boxv;
                cfg["grid"] = *grid;
                Json res;
                res["points_in_G"] = scan.samples.size();
                res["has_positive"] = scan.has_positive;
                res["has_negative"] = scan.has_negative;
                if (!opts->out_path.empty()) {
                    write_text_file(opts->out_path, csv.str());
                    res["csv"] = opts->out_path;
                    cfg["out"] = opts->out_path;
                    CommonOpts stdout_only = *opts;  // --out already holds the CSV
                    stdout_only.out_path.clear();
                    emit(out, stdout_only, "ft scan", cfg, res);
                } else if (opts->format == "csv") {
                    out << csv.str();
                } else {
                    Json rows = Json::array();
                    for (const auto& s : scan.samples)
                        rows.push_back({s.xi[0], s.xi[1], s.xi[2], s.value});
                    res["samples"] = rows;
                    emit(out, *opts, "ft scan", cfg, res);
                }
            });
        }
        {
            auto* cmd = ft->add_subcommand("pairing", "distributional pairing oracle (n = 3)");
            auto opts = std::make_shared<CommonOpts>();
            auto qv = std::make_shared<double>();
            auto center = std::make_shared<std::vector<double>>();
            auto radius = std::make_shared<std::vector<double>>(std::vector<double>{0.2});
            auto budget = std::make_shared<double>(1e-3);
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--center", *center, "bump center")->required()->delimiter(',');
            cmd->add_option("--radius", *radius, "bump radius (1 or 3 values)")->delimiter(',');
            cmd->add_option("--budget", *budget, "relative tolerance budget for the tail");
            add_common(cmd, *opts);
            cmd->callback([&, opts, qv, center, radius, budget] {
                if (center->size() != 3)
                    throw std::invalid_argument("ft pairing: --center needs 3 numbers");
                BumpSpec bump{};
                for (int a = 0; a < 3; ++a) {
                    bump.center[a] = (*center)[a];
                    bump.radius[a] = radius->size() == 3 ? (*radius)[a] : radius->front();
                }
                auto rep = ft_pairing_oracle(Exponent(*qv), bump, *budget);
                Json cfg;
                cfg["q"] = *qv;
                cfg["center"] = *center;
                cfg["radius"] = *radius;
                cfg["budget"] = *budget;
                Json res;
                res["lhs"] = rep.lhs;
                res["rhs"] = rep.rhs;
                res["rel_err"] = rep.rel_err;
                res["tail_bound"] = rep.tail_bound;
                res["truncation"] = rep.truncation;
                emit(out, *opts, "ft pairing", cfg, res);
            });
        }
    }

    // ---- levy ----
    {
        auto* levy = app.add_subcommand("levy", "Levy representations");
        levy->require_subcommand(1);
        {
            auto* cmd = levy->add_subcommand("check", "max of two via the representing measure");
            auto opts = std::make_shared<CommonOpts>();
            auto qv = std::make_shared<double>();
            auto xv = std::make_shared<double>();
            auto yv = std::make_shared<double>();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--x", *xv)->required();
            cmd->add_option("--y", *yv)->required();
            add_common(cmd, *opts);
            cmd->callback([&, opts, qv, xv, yv] {
                Exponent q(*qv);
                double v = q.q < 1.0 ? max2_via_levy(q, *xv, *yv)
                                     : std::pow(max2_q1(*xv, *yv), q.q);
                double expected = std::pow(std::max(std::abs(*xv), std::abs(*yv)), q.q);
                Json cfg;
                cfg["q"] = *qv;
                cfg["x"] = *xv;
                cfg["y"] = *yv;
                Json res;
                res["value"] = v;
                res["expected"] = expected;
                res["rel_err"] =
                    std::abs(v - expected) / std::max(std::abs(expected), 1e-300);
                emit(out, *opts, "levy check", cfg, res);
            });
        }
        {
            auto* cmd = levy->add_subcommand(
                "repr", "build a representation and certify it on random samples");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto qv = std::make_shared<double>();
            auto samples = std::make_shared<int>(100);
            cmd->add_option("--weights", *wfile)->required();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--samples", *samples)->check(CLI::PositiveNumber);
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, qv, samples] {
                auto vals = read_weight_file(*wfile);
                Weights w = Weights::make_ordered(vals);
                Exponent q(*qv);
                auto rep = build_representation(w, q, opts->tol);
                std::mt19937_64 rng(resolve_seed(*opts));
                std::normal_distribution<double> g(0.0, 1.5);
                double max_rel = 0.0;
                for (int s = 0; s < *samples; ++s) {
                    std::vector<double> x(w.size());
                    for (auto& c : x) c = g(rng);
                    double via_rep = eval_representation(rep, x);
                    double direct = std::pow(lorentz_qnorm(w, q, x), q.q);
                    max_rel = std::max(max_rel, std::abs(via_rep - direct) /
                                                    std::max(direct, 1e-300));
                }
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                cfg["q"] = *qv;
                cfg["samples"] = *samples;
                Json res;
                res["atoms"] = rep.atoms.size();
                res["pair_components"] = rep.pair_components.size();
                res["prefactor"] = rep.prefactor;
                res["max_rel_err"] = max_rel;
                res["certified"] = max_rel <= 1e-3;
                emit(out, *opts, "levy repr", cfg, res);
                if (max_rel > 1e-3)
                    throw NumericError("levy repr: reconstruction error above 1e-3");
            });
        }
    }

    // ---- decide ----
    {
        auto* decide = app.add_subcommand("decide", "embeddability decisions");
        decide->require_subcommand(1);
        {
            auto* cmd = decide->add_subcommand("seq", "finite or generated weight sequences");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto qv = std::make_shared<double>();
            auto gen = std::make_shared<std::string>();
            auto probe = std::make_shared<int>(32);
            cmd->add_option("--weights", *wfile, "finite weight file");
            cmd->add_option("--generator", *gen,
                            "infinite family: constant:<c> | harmonic | one-plus-inv | ap:<a>,<d>");
            cmd->add_option("--probe", *probe, "terms probed for --generator");
            cmd->add_option("--q", *qv)->required();
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, qv, gen, probe] {
                Exponent q(*qv);
                Json cfg;
                cfg["q"] = *qv;
                Json res;
                bool yes = false;
                if (!wfile->empty()) {
                    auto vals = read_weight_file(*wfile);
                    Weights w = Weights::make_ordered(vals);
                    auto d = decide_embeddable(w, q, opts->tol);
                    cfg["weights_file"] = *wfile;
                    cfg["weights"] = vals;
                    res = decision_json(d);
                    yes = d.verdict;
                } else if (!gen->empty()) {
                    std::function<double(int)> fn;
                    if (gen->rfind("constant:", 0) == 0) {
                        double c = std::stod(gen->substr(9));
                        fn = [c](int) { return c; };
                    } else if (*gen == "harmonic") {
                        fn = [](int k) { return 1.0 / k; };
                    } else if (*gen == "one-plus-inv") {
                        fn = [](int k) { return 1.0 + 1.0 / k; };
                    } else if (gen->rfind("ap:", 0) == 0) {
                        std::istringstream is(gen->substr(3));
                        double a0, d0;
                        char comma;
                        if (!(is >> a0 >> comma >> d0))
                            throw std::invalid_argument("decide seq: bad ap:<a>,<d> generator");
                        fn = [a0, d0](int k) { return a0 - (k - 1) * d0; };
                    } else {
                        throw std::invalid_argument("decide seq: unknown generator " + *gen);
                    }
                    auto v = decide_sequence_space(fn, q, *probe, opts->tol);
                    cfg["generator"] = *gen;
                    cfg["probe"] = *probe;
                    res["verdict"] = v.verdict ? "yes" : "no";
                    res["defect"] = v.defect;
                    res["probed"] = v.probed;
                    yes = v.verdict;
                } else {
                    throw std::invalid_argument("decide seq: need --weights or --generator");
                }
                emit(out, *opts, "decide seq", cfg, res);
                exit_code = yes ? 0 : 1;
            });
        }
        {
            auto* cmd = decide->add_subcommand("fun", "Lorentz function spaces");
            auto opts = std::make_shared<CommonOpts>();
            auto spec = std::make_shared<std::string>();
            auto qv = std::make_shared<double>();
            auto levels = std::make_shared<std::vector<int>>(std::vector<int>{2, 3, 4, 5});
            cmd->add_option("--weight-spec", *spec,
                            "e.g. {kind:linear,alpha:1} | {kind:power,expo:0.5} | "
                            "{kind:constant,value:1,interval:halfline}")
                ->required();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--levels", *levels)->delimiter(',');
            add_common(cmd, *opts);
            cmd->callback([&, opts, spec, qv, levels] {
                FunctionWeight w = weight_from_spec(parse_weight_spec(*spec));
                Exponent q(*qv);
                auto d = decide_function_space(w, q, *levels, opts->tol);
                Json cfg;
                cfg["weight_spec"] = parse_weight_spec(*spec);
                cfg["q"] = *qv;
                cfg["levels"] = *levels;
                Json res;
                res["verdict"] = d.verdict ? "yes" : "no";
                res["regime"] = regime_name(d.regime);
                res["constancy_required"] = d.constancy_required;
                Json defs = Json::array();
                for (auto& [lvl, defect] : d.level_defects)
                    defs.push_back({{"level", lvl}, {"defect", defect}});
                res["level_defects"] = defs;
                emit(out, *opts, "decide fun", cfg, res);
                exit_code = d.verdict ? 0 : 1;
            });
        }
    }

    // ---- zono ----
    {
        auto* zono = app.add_subcommand("zono", "dual-ball geometry at q = 1");
        zono->require_subcommand(1);
        auto load_exact = [](const std::string& path) {
            auto vals = read_weight_file(path);
            Weights w = Weights::make_ordered(vals);
            return std::pair<std::vector<double>, std::vector<Rational>>(vals, w.exact());
        };
        {
            auto* cmd = zono->add_subcommand("vertices", "extreme points of the dual ball");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            cmd->add_option("--weights", *wfile)->required();
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, load_exact] {
                auto [vals, exact] = load_exact(*wfile);
                auto vs = dual_extreme_points(std::span<const Rational>(exact));
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                Json res;
                res["count"] = vs.points.size();
                Json pts = Json::array();
                for (const auto& p : vs.points) {
                    Json row = Json::array();
                    for (const auto& v : p) row.push_back(to_string(v));
                    pts.push_back(row);
                }
                res["points"] = pts;
                emit(out, *opts, "zono vertices", cfg, res);
            });
        }
        {
            auto* cmd = zono->add_subcommand("face", "the permuted-triple 2-face");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto off = std::make_shared<std::string>();
            cmd->add_option("--weights", *wfile)->required();
            cmd->add_option("--off", *off, "write the polygon in OFF format");
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, off, load_exact] {
                auto [vals, exact] = load_exact(*wfile);
                auto face = permuted_triple_face(std::span<const Rational>(exact));
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                Json res;
                res["shape"] = face.shape == FaceShape::Hexagon ? "hexagon" : "triangle";
                res["centrally_symmetric"] = is_centrally_symmetric(face);
                Json pts = Json::array();
                for (const auto& p : face.vertices) {
                    Json row = Json::array();
                    for (const auto& v : p) row.push_back(to_string(v));
                    pts.push_back(row);
                }
                res["vertices"] = pts;
                if (!off->empty()) {
                    write_text_file(*off, face_to_off(face));
                    res["off"] = *off;
                }
                emit(out, *opts, "zono face", cfg, res);
            });
        }
        {
            auto* cmd = zono->add_subcommand("generators", "segment generators of the zonotope");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            cmd->add_option("--weights", *wfile)->required();
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, load_exact] {
                auto [vals, exact] = load_exact(*wfile);
                auto gens = zonotope_generators(std::span<const Rational>(exact));
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                Json res;
                res["count"] = gens.generators.size();
                Json rows = Json::array();
                for (const auto& g : gens.generators) {
                    Json row = Json::array();
                    for (const auto& v : g.direction) row.push_back(to_string(v));
                    rows.push_back(row);
                }
                res["generators"] = rows;
                emit(out, *opts, "zono generators", cfg, res);
            });
        }
        {
            auto* cmd = zono->add_subcommand(
                "check", "support identity and face symmetry against the norm");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto samples = std::make_shared<int>(200);
            cmd->add_option("--weights", *wfile)->required();
            cmd->add_option("--samples", *samples)->check(CLI::PositiveNumber);
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, samples, load_exact] {
                auto [vals, exact] = load_exact(*wfile);
                auto gens = zonotope_generators(std::span<const Rational>(exact));
                std::mt19937_64 rng(resolve_seed(*opts));
                bool identity = true;
                for (int s = 0; s < *samples && identity; ++s) {
                    auto x = random_rational_vector(exact.size(), rng);
                    identity = support_function(gens, std::span<const Rational>(x)) ==
                               lorentz_norm1_exact(exact, x);
                }
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                cfg["samples"] = *samples;
                Json res;
                res["support_identity"] = identity;
                bool face_ok = true;
                if (exact.size() >= 3 &&
                    !(exact[exact.size() - 3] == exact[exact.size() - 1])) {
                    auto face = permuted_triple_face(std::span<const Rational>(exact));
                    face_ok = is_centrally_symmetric(face);
                    res["face_shape"] =
                        face.shape == FaceShape::Hexagon ? "hexagon" : "triangle";
                    res["face_centrally_symmetric"] = face_ok;
                }
                res["verdict"] = (identity && face_ok) ? "yes" : "no";
                emit(out, *opts, "zono check", cfg, res);
                exit_code = (identity && face_ok) ? 0 : 1;
            });
        }
    }

    // ---- posdef ----
    {
        auto* posdef = app.add_subcommand("posdef", "positive definiteness of exp(-||x||^q)");
        posdef->require_subcommand(1);
        {
            auto* cmd = posdef->add_subcommand("gram", "minimum Gram eigenvalue on a point set");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto pfile = std::make_shared<std::string>();
            auto qv = std::make_shared<double>();
            cmd->add_option("--weights", *wfile)->required();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--points", *pfile, "point file (JSON array of arrays or CSV rows)")
                ->required();
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, pfile, qv] {
                auto vals = read_weight_file(*wfile);
                KernelSpec k(vals, *qv);
                auto pts = read_point_file(*pfile);
                auto rep = gram_min_eig(k, pts);
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                cfg["q"] = *qv;
                cfg["points_file"] = *pfile;
                Json res;
                res["m"] = rep.m;
                res["min_eigenvalue"] = rep.min_eigenvalue;
                res["matrix_norm"] = rep.matrix_norm;
                res["negative"] = !rep.witness_points.empty();
                emit(out, *opts, "posdef gram", cfg, res);
                exit_code = rep.witness_points.empty() ? 0 : 1;
            });
        }
        {
            auto* cmd = posdef->add_subcommand("search", "directed witness search");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto qv = std::make_shared<double>();
            auto budget = std::make_shared<long>(50000);
            cmd->add_option("--weights", *wfile)->required();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--budget", *budget, "kernel-evaluation budget");
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, qv, budget] {
                auto vals = read_weight_file(*wfile);
                KernelSpec k(vals, *qv);
                auto res0 = witness_search(k, *budget, resolve_seed(*opts));
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                cfg["q"] = *qv;
                cfg["budget"] = *budget;
                Json res;
                res["found"] = res0.found;
                res["evaluations_used"] = res0.evaluations_used;
                if (res0.found) {
                    res["strategy"] = res0.strategy;
                    res["min_eigenvalue"] = res0.report.min_eigenvalue;
                    res["matrix_norm"] = res0.report.matrix_norm;
                    Json pts = Json::array();
                    for (const auto& p : res0.report.witness_points) pts.push_back(p);
                    res["witness_points"] = pts;
                } else {
                    res["status"] = "exhausted";
                }
                emit(out, *opts, "posdef search", cfg, res);
                exit_code = res0.found ? 1 : 0;
            });
        }
        {
            auto* cmd = posdef->add_subcommand("oracle", "randomized decision oracle");
            auto opts = std::make_shared<CommonOpts>();
            auto wfile = std::make_shared<std::string>();
            auto qv = std::make_shared<double>();
            auto trials = std::make_shared<int>(200);
            cmd->add_option("--weights", *wfile)->required();
            cmd->add_option("--q", *qv)->required();
            cmd->add_option("--trials", *trials)->check(CLI::PositiveNumber);
            add_common(cmd, *opts);
            cmd->callback([&, opts, wfile, qv, trials] {
                auto vals = read_weight_file(*wfile);
                KernelSpec k(vals, *qv);
                auto rep = schoenberg_decision_oracle(k, *trials, resolve_seed(*opts),
                                                      opts->threads);
                Json cfg;
                cfg["weights_file"] = *wfile;
                cfg["weights"] = vals;
                cfg["q"] = *qv;
                cfg["trials"] = *trials;
                Json res;
                res["verdict"] = rep.verdict == SchoenbergVerdict::Refuted ? "refuted"
                                                                           : "PD-consistent";
                res["trials_run"] = rep.trials_run;
                if (rep.verdict == SchoenbergVerdict::Refuted) {
                    res["min_eigenvalue"] = rep.refutation.min_eigenvalue;
                    res["m"] = rep.refutation.m;
                }
                emit(out, *opts, "posdef oracle", cfg, res);
                exit_code = rep.verdict == SchoenbergVerdict::Refuted ? 1 : 0;
            });
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace lorentz
