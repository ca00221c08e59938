#include "cli_app.hpp"

#include <algorithm>
#include <boost/math/interpolators/makima.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "calogero/errors.hpp"
#include "calogero/quadrature.hpp"
#include "calogero/symmetry.hpp"
#include "calogero/transform.hpp"
#include "expression.hpp"
#include "json.hpp"

namespace calogero::cli {

using json = nlohmann::ordered_json;

namespace {

// ------------------------------------------------------------------ parsing

bool parse_double(const std::string& s, double& v) {
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

ExtendedReal parse_lambda(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "-inf") return ExtendedReal::infinity();
    double v;
    if (!parse_double(s, v)) throw UsageError("--lambda: expected a number, inf or -inf, got '" + s + "'");
    return ExtendedReal::finite(v);
}

double parse_theta(const std::string& s) {
    double v;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        const std::string head = s.substr(0, s.size() - 2);
        if (head.empty() || head == "+") return kPi;
        if (head == "-") return -kPi;
        if (!parse_double(head, v)) throw UsageError("--theta: bad multiple of pi '" + s + "'");
        return v * kPi;
    }
    if (!parse_double(s, v)) throw UsageError("--theta: expected a number or a multiple of pi like 0.5pi, got '" + s + "'");
    return v;
}

LevelWindow parse_window(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw UsageError("--window: expected a..b, got '" + s + "'");
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    auto to_int = [&](const std::string& t) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(t, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (t.empty() || pos != t.size()) throw UsageError("--window: bad level index in '" + s + "'");
        return v;
    };
    LevelWindow w{to_int(a), to_int(b)};
    if (w.n_min > w.n_max) throw UsageError("--window: empty range '" + s + "'");
    return w;
}

std::pair<double, double> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    double a, b;
    if (dots == std::string::npos || !parse_double(s.substr(0, dots), a) || !parse_double(s.substr(dots + 2), b) ||
        !(a > 0.0) || !(b > a))
        throw UsageError("--density-range: expected 0 < a < b as a..b, got '" + s + "'");
    return {a, b};
}

struct Raw {
    std::string lambda, theta, sign, window, format = "json", density_range;
    double mu = 0.0;
    bool has_mu = false;
    double threshold = 0.0;
};

void add_common(CLI::App* sub, RunConfig& c, Raw& r) {
    sub->add_option("--alpha", c.alpha, "coupling alpha")->required();
    sub->add_option("--lambda", r.lambda, "extension parameter lambda (number, inf, -inf)");
    sub->add_option("--theta", r.theta, "extension angle theta (number or multiple of pi, e.g. 0.5pi)");
    sub->add_option("--mu", r.mu, "scale parameter mu > 0");
    sub->add_option("--sign", r.sign, "sign tag for mu in region R2")->check(CLI::IsMember({"plus", "minus"}));
    sub->add_option("--k0", c.k0, "reference wave number")->check(CLI::PositiveNumber);
    sub->add_option("--window", r.window, "level window a..b (region R4)");
    sub->add_option("--x-nodes", c.x_nodes, "x quadrature nodes")->check(CLI::Range(64, 1000000));
    sub->add_option("--e-nodes", c.e_nodes, "energy quadrature nodes")->check(CLI::Range(64, 1000000));
    sub->add_option("--X", c.X, "x extent (default 40/k0)")->check(CLI::PositiveNumber);
    sub->add_option("--E-max", c.E_max, "energy cut-off (default 1600 k0^2)")->check(CLI::PositiveNumber);
    sub->add_option("--format", r.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output-dir", c.output_dir, "write files here instead of standard output");
    sub->add_option("--seed", c.seed, "seed for randomized checks");
}

CLI::App& build(CLI::App& app, RunConfig& c, Raw& r) {
    app.require_subcommand(1, 1);
    auto* spectrum = app.add_subcommand("spectrum", "bound levels and continuum density");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    auto* expand = app.add_subcommand("expand", "transform a function and reconstruct it");
    for (auto* s : {spectrum, verify, expand}) add_common(s, c, r);
    spectrum->add_option("--density-range", r.density_range, "density energies a..b in units of k0^2");
    spectrum->add_option("--density-points", c.density_points, "density samples")->check(CLI::Range(1, 100000));
    verify->add_option("--threshold-override", r.threshold, "replace every threshold");
    auto* in = expand->add_option("--input", c.input_file, "two-column file of x value pairs");
    expand->add_option("--expr", c.expression, "function of x")->excludes(in);
    return app;
}

void finish(CLI::App& app, RunConfig& c, Raw& r) {
    for (const auto* s : app.get_subcommands()) c.command = s->get_name();
    const CLI::App* sub = app.get_subcommand(c.command);
    r.has_mu = sub->count("--mu") > 0;
    int given = 0;
    if (!r.lambda.empty()) {
        c.extension = "lambda";
        c.lambda_text = r.lambda;
        parse_lambda(r.lambda);
        ++given;
    }
    if (!r.theta.empty()) {
        c.extension = "theta";
        c.theta_text = r.theta;
        parse_theta(r.theta);
        ++given;
    }
    if (r.has_mu) {
        if (!(r.mu > 0.0) || !std::isfinite(r.mu)) throw UsageError("--mu must be a positive number");
        c.extension = "mu";
        c.mu = r.mu;
        ++given;
    }
    if (given > 1) throw UsageError("give at most one of --lambda, --theta, --mu");
    c.sign = r.sign;
    if (!r.sign.empty() && c.extension != "mu") throw UsageError("--sign only goes with --mu");
    if (!r.window.empty()) c.window = parse_window(r.window);
    c.format = r.format == "csv" ? Format::Csv : Format::Json;
    if (!r.density_range.empty()) std::tie(c.density_lo, c.density_hi) = parse_range(r.density_range);
    if (c.command == "verify" && sub->count("--threshold-override")) {
        if (!(r.threshold >= 0.0)) throw UsageError("--threshold-override must be nonnegative");
        c.threshold_override = r.threshold;
    }
    if (c.output_dir.empty())
        if (const char* env = std::getenv(kOutputDirEnv)) c.output_dir = env;
}

// ----------------------------------------------------------------- output

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(fmt(v)); }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<json> rows;  // objects keyed by column
};

struct Report {
    json config, regime;
    std::string extension;
    std::vector<Table> tables;  // bound, density, checks first
    json summary;
};

Table& table(Report& r, const std::string& name) {
    for (auto& t : r.tables)
        if (t.name == name) return t;
    throw std::logic_error("no table " + name);
}

std::string cell(const json& v) {
    if (v.is_number()) return fmt(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_csv_table(std::ostream& os, const Report& r, const Table& t) {
    os << "# table: " << t.name << "\n";
    os << "# config: " << r.config.dump() << "\n";
    os << "# regime: " << r.regime.dump() << "\n";
    os << "# extension: " << r.extension << "\n";
    if (!r.summary.empty()) os << "# summary: " << r.summary.dump() << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << cell(row.at(t.columns[i]));
        os << "\n";
    }
}

json to_json(const Report& r) {
    json doc;
    doc["config"] = r.config;
    doc["regime"] = r.regime;
    doc["extension"] = r.extension;
    for (const auto& t : r.tables) {
        json arr = json::array();
        for (const auto& row : t.rows) arr.push_back(row);
        doc[t.name] = arr;
    }
    if (!r.summary.empty()) doc["summary"] = r.summary;
    return doc;
}

void emit(const RunConfig& c, const Report& r, std::ostream& out) {
    if (c.output_dir.empty()) {
        if (c.format == Format::Json) {
            out << to_json(r).dump(2) << "\n";
        } else {
            for (std::size_t i = 0; i < r.tables.size(); ++i) {
                if (i) out << "\n";
                write_csv_table(out, r, r.tables[i]);
            }
        }
        return;
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(c.output_dir, ec);
    if (ec) throw InputError("cannot create output directory " + c.output_dir + ": " + ec.message());
    auto open = [&](const fs::path& p) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw InputError("cannot write " + p.string());
        return f;
    };
    if (c.format == Format::Json) {
        const fs::path p = fs::path(c.output_dir) / (c.command + ".json");
        auto f = open(p);
        f << to_json(r).dump(2) << "\n";
        out << "wrote " << p.string() << "\n";
    } else {
        for (const auto& t : r.tables) {
            const fs::path p = fs::path(c.output_dir) / (c.command + "_" + t.name + ".csv");
            auto f = open(p);
            write_csv_table(f, r, t);
            out << "wrote " << p.string() << "\n";
        }
    }
}

json config_json(const RunConfig& c, const ExtensionSpec& spec, const std::optional<LevelWindow>& window) {
    json j;
    j["command"] = c.command;
    j["alpha"] = c.alpha;
    j["extension"] = c.extension;
    if (c.extension == "lambda") j["lambda"] = c.lambda_text;
    if (c.extension == "theta") j["theta"] = c.theta_text;
    if (c.extension == "mu") {
        j["mu"] = c.mu;
        if (!c.sign.empty()) j["sign"] = c.sign;
    }
    j["k0"] = c.k0;
    if (window) j["window"] = {window->n_min, window->n_max};
    else j["window"] = nullptr;
    j["x_nodes"] = c.x_nodes;
    j["e_nodes"] = c.e_nodes;
    j["X"] = c.X > 0.0 ? c.X : kDefaultX / spec.k0;
    j["E_max"] = c.E_max > 0.0 ? c.E_max : kDefaultEmax * spec.k0 * spec.k0;
    if (c.command == "spectrum") {
        j["density_range"] = {c.density_lo, c.density_hi};
        j["density_points"] = c.density_points;
    }
    if (c.command == "verify") {
        j["seed"] = c.seed;
        j["threshold_override"] = c.threshold_override ? json(*c.threshold_override) : json(nullptr);
    }
    if (c.command == "expand") {
        if (!c.input_file.empty()) j["input"] = c.input_file;
        else j["expr"] = c.expression.empty() ? kBuiltinFunction : c.expression;
    }
    j["format"] = c.format == Format::Json ? "json" : "csv";
    return j;
}

json regime_json(const ExtensionSpec& s) {
    json j;
    j["region"] = region_name(s.regime.region);
    j["alpha"] = s.regime.alpha;
    if (s.regime.region == Region::R4) j["sigma"] = s.regime.sigma();
    else j["kappa"] = s.regime.kappa();
    return j;
}

Report start(const RunConfig& c, const ExtensionSpec& spec, const std::optional<LevelWindow>& window) {
    Report r;
    r.config = config_json(c, spec, window);
    r.regime = regime_json(spec);
    r.extension = describe(spec);
    r.tables.push_back({"bound", {"n", "E", "rho"}, {}});
    r.tables.push_back({"density", {"E", "rho_c"}, {}});
    r.tables.push_back({"checks", {"name", "residual", "threshold", "pass"}, {}});
    return r;
}

void add_bound(Report& r, const std::vector<BoundState>& b) {
    for (const auto& s : b) table(r, "bound").rows.push_back(json{{"n", s.n}, {"E", num(s.E)}, {"rho", num(s.rho)}});
}

bool add_check(Report& r, const RunConfig& c, const std::string& name, double residual, double threshold) {
    const double t = c.threshold_override.value_or(threshold);
    const bool pass = residual <= t;
    table(r, "checks").rows.push_back(
        json{{"name", name}, {"residual", num(residual)}, {"threshold", num(t)}, {"pass", pass}});
    return pass;
}

// ----------------------------------------------------------------- commands

int cmd_spectrum(const RunConfig& c, const ExtensionSpec& spec, std::ostream& out) {
    if (spec.regime.region == Region::R4 && !c.window)
        throw UsageError("region R4 has infinitely many bound states; choose a level window, e.g. --window -2..2");
    Report r = start(c, spec, c.window);
    add_bound(r, bound_states(spec, c.window));
    const double k2 = spec.k0 * spec.k0;
    const int n = c.density_points;
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : double(i) / (n - 1);
        const double E = k2 * c.density_lo * std::pow(c.density_hi / c.density_lo, t);
        table(r, "density").rows.push_back(json{{"E", num(E)}, {"rho_c", num(spectral_density(spec, E))}});
    }
    emit(c, r, out);
    return Ok;
}

// integral over (0, inf) in units of the decay length, split by decades so oscillations near 0 are resolved
double integral_sq(const std::function<double(double)>& g, double scale) {
    auto h = [&](double y) { return scale * g(scale * y); };
    double o = 0.0, lo = 0.0;
    for (double hi = 1e-8; hi < 40.0; hi *= 10.0) {
        o += integrate_adaptive(h, lo, hi, 1e-13, 1e-16).value;
        lo = hi;
    }
    return o + integrate_to_infinity(h, lo, 1e-13, 1e-16).value;
}

GridFunction test_function(const ExtensionSpec& spec, const GridFunction& xg) {
    const double k0 = spec.k0;
    GridFunction f = xg;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double y = k0 * f.nodes[i];
        f.values[i] = std::pow(y, 1.5) * std::exp(-y);
    }
    return f;
}

int cmd_verify(const RunConfig& c, const ExtensionSpec& spec, std::ostream& out) {
    const bool r4 = spec.regime.region == Region::R4;
    const std::optional<LevelWindow> window = r4 ? c.window.value_or(LevelWindow{-2, 2}) : c.window;
    Report r = start(c, spec, window);
    const double k0 = spec.k0, k2 = k0 * k0;
    bool ok = true;

    // Wronskian Wr(u, v) = -omega at random complex energies
    {
        std::mt19937_64 rng(c.seed);
        std::uniform_real_distribution<double> re(-5.0, 5.0), im(0.01, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const cplx W(re(rng) * k2, im(rng) * k2);
            const FundamentalTriple t(spec, W);
            for (double x0 : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                const double x = x0 / k0, h = 1e-3 * x;
                auto d = [&](auto f) {
                    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
                };
                auto u = [&](double y) { return t.u(y); };
                auto v = [&](double y) { return t.v(y); };
                const cplx wr = u(x) * d(v) - d(u) * v(x);
                const double scale =
                    std::max(std::abs(u(x)) * std::abs(v(x)) * (std::abs(t.beta()) + 1.0 / x), std::abs(t.omega()));
                worst = std::max(worst, std::abs(wr + t.omega()) / scale);
            }
        }
        ok &= add_check(r, c, "wronskian", worst, 1e-8);
    }

    const auto bound = bound_states(spec, window);
    add_bound(r, bound);
    if (!bound.empty()) {
        double worst = 0.0, cross = 0.0;
        for (std::size_t i = 0; i < bound.size(); ++i) {
            const double scale = 1.0 / std::sqrt(-bound[i].E);
            const auto& p = bound[i].profile;
            worst = std::max(worst, std::abs(integral_sq([&](double x) { return p(x) * p(x); }, scale) - 1.0));
            if (i + 1 < bound.size()) {
                const auto& q = bound[i + 1].profile;
                cross = std::max(cross, std::abs(integral_sq([&](double x) { return p(x) * q(x); }, scale)));
            }
        }
        ok &= add_check(r, c, "normalization", worst, 1e-8);
        if (bound.size() > 1) ok &= add_check(r, c, "orthogonality", cross, 1e-8);
    }

    // Green's function route against the closed-form density
    {
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double E = k2 * std::pow(10.0, -1.0 + 2.0 * i / 9.0);
            const double rho = spectral_density(spec, E);
            const double g = greens_density_auto(spec, E, 1e-6).value;
            table(r, "density").rows.push_back(json{{"E", num(E)}, {"rho_c", num(rho)}});
            worst = std::max(worst, std::abs(g - rho) / rho);
        }
        ok &= add_check(r, c, "greens_vs_density", worst, 1e-4);
    }

    // completeness on one smooth function
    {
        const GridFunction xg = x_grid(spec, c.X, c.x_nodes);
        const GridFunction eg = energy_grid(spec, c.E_max, c.X, c.e_nodes);
        const Transformer T(spec, xg, eg, r4 ? c.window : std::nullopt);
        const GridFunction f = test_function(spec, xg);
        const TransformResult tr = T.forward(f);
        ok &= add_check(r, c, "parseval", parseval_residual(f, tr), 1e-3);
        ok &= add_check(r, c, "round_trip", relative_l2_error(T.inverse(tr), f), 1e-3);
    }

    {
        const CovarianceReport cov = covariance_check(spec, 2.0);
        ok &= add_check(r, c, "covariance", cov.pointwise_residual, spec.regime.region == Region::R1 ? 1e-12 : 1e-10);
        if (!cov.levels.empty()) ok &= add_check(r, c, "level_scaling", cov.level_residual, 1e-12);
        if (r4) {
            const CovarianceReport sub = covariance_check(spec, std::exp(kPi / spec.regime.sigma()));
            ok &= add_check(r, c, "discrete_subgroup", sub.set_distance, 1e-12);
        }
    }

    emit(c, r, out);
    return ok ? Ok : ChecksFailed;
}

std::function<double(double)> interpolant(const Samples& s) {
    if (s.x.size() < 4) throw InputError("input: need at least 4 samples");
    for (std::size_t i = 1; i < s.x.size(); ++i)
        if (!(s.x[i] > s.x[i - 1])) throw InputError("input: x values must increase strictly");
    using boost::math::interpolators::makima;
    auto f = std::make_shared<makima<std::vector<double>>>(std::vector<double>(s.x), std::vector<double>(s.y));
    const double lo = s.x.front(), hi = s.x.back();
    return [f, lo, hi](double x) { return x < lo || x > hi ? 0.0 : (*f)(x); };
}

int cmd_expand(const RunConfig& c, const ExtensionSpec& spec, std::ostream& out) {
    std::function<double(double)> fn;
    if (!c.input_file.empty()) {
        std::ifstream in(c.input_file);
        if (!in) throw InputError("cannot open " + c.input_file);
        fn = interpolant(read_samples(in));
    } else {
        fn = Expression(c.expression.empty() ? kBuiltinFunction : c.expression);
    }
    const bool r4 = spec.regime.region == Region::R4;
    const std::optional<LevelWindow> window = r4 ? c.window.value_or(kDefaultWindow) : c.window;
    Report r = start(c, spec, window);
    const GridFunction xg = x_grid(spec, c.X, c.x_nodes);
    const GridFunction eg = energy_grid(spec, c.E_max, c.X, c.e_nodes);
    GridFunction f = xg;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.values[i] = fn(f.nodes[i]);
        if (!std::isfinite(f.values[i])) throw InputError("function is not finite at x = " + fmt(f.nodes[i]));
    }
    const Transformer T(spec, xg, eg, window);
    const TransformResult tr = T.forward(f);
    const GridFunction g = T.inverse(tr);

    for (std::size_t n = 0; n < tr.bound.size(); ++n)
        table(r, "bound").rows.push_back(json{{"n", tr.bound[n].n}, {"E", num(tr.bound[n].E)},
                                              {"rho", num(tr.bound[n].rho)}, {"phi", num(tr.phi_n[n])}});
    table(r, "bound").columns.push_back("phi");
    Table coef{"coefficients", {"E", "phi_c"}, {}};
    for (std::size_t j = 0; j < tr.phi_c.size(); ++j)
        coef.rows.push_back(json{{"E", num(tr.phi_c.nodes[j])}, {"phi_c", num(tr.phi_c.values[j])}});
    Table rec{"reconstruction", {"x", "psi", "psi_rec"}, {}};
    for (std::size_t i = 0; i < f.size(); ++i)
        rec.rows.push_back(json{{"x", num(f.nodes[i])}, {"psi", num(f.values[i])}, {"psi_rec", num(g.values[i])}});
    r.tables.push_back(std::move(coef));
    r.tables.push_back(std::move(rec));

    // the zero function has zero coefficients and nothing to compare against
    const double lhs = tr.parseval_lhs;
    const double parseval = lhs > 0.0 ? std::abs(lhs - tr.parseval_rhs) / lhs : std::abs(tr.parseval_rhs);
    const double round = lhs > 0.0 ? relative_l2_error(g, f) : std::sqrt(g.norm2());
    bool ok = add_check(r, c, "parseval", parseval, 1e-3);
    ok &= add_check(r, c, "round_trip", round, 1e-3);
    r.summary = json{{"parseval_lhs", num(lhs)},
                     {"parseval_rhs", num(tr.parseval_rhs)},
                     {"parseval_residual", num(parseval)},
                     {"round_trip_error", num(round)},
                     {"x_points", f.size()},
                     {"e_points", tr.phi_c.size()}};
    emit(c, r, out);
    return ok ? Ok : ChecksFailed;
}

}  // namespace

// ------------------------------------------------------------------ public

Samples read_samples(std::istream& in) {
    Samples s;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        double x, y;
        if (!(ls >> b) || (ls >> extra) || !parse_double(a, x) || !parse_double(b, y))
            throw InputError("input line " + std::to_string(no) + ": expected two numbers 'x value'");
        s.x.push_back(x);
        s.y.push_back(y);
    }
    if (s.x.empty()) throw InputError("input: no samples");
    return s;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig c;
    Raw r;
    CLI::App app{"calogero"};
    build(app, c, r);
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    finish(app, c, r);
    return c;
}

ExtensionSpec resolve_spec(const RunConfig& c) {
    const CouplingRegime reg = classify(c.alpha);
    const std::string name = region_name(reg.region);
    if (reg.region == Region::R1) {
        if (c.extension != "none") throw UsageError("region R1 takes no extension parameter");
        return make_spec(c.alpha, NoParam{}, c.k0);
    }
    if (c.extension == "none") {
        const char* hint = reg.region == Region::R4 ? "--theta or --mu" : "--lambda or --mu";
        throw UsageError("region " + name + " needs an extension parameter: " + hint);
    }
    try {
        if (c.extension == "lambda") {
            if (reg.region == Region::R4) throw UsageError("region R4 takes --theta or --mu, not --lambda");
            return make_spec(c.alpha, Lambda{parse_lambda(c.lambda_text)}, c.k0);
        }
        if (c.extension == "theta") {
            if (reg.region != Region::R4) throw UsageError("--theta only applies in region R4");
            return make_spec(c.alpha, Theta{parse_theta(c.theta_text)}, c.k0);
        }
        ScaleParam p{c.mu, SignTag::NotApplicable};
        if (reg.region == Region::R2) {
            if (c.sign.empty()) throw UsageError("region R2 with --mu needs --sign plus|minus");
            p.sign = c.sign == "plus" ? SignTag::Plus : SignTag::Minus;
        } else if (!c.sign.empty()) {
            throw UsageError("--sign only applies in region R2");
        }
        return param_from_scale(reg, p, c.k0);
    } catch (const ArgumentError& e) {
        throw UsageError(e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    Raw r;
    CLI::App app{"Inverse-square potential: spectra, verification and transforms", "calogero"};
    build(app, c, r);
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for the options\n";
        return Usage;
    }
    try {
        finish(app, c, r);
        const ExtensionSpec spec = resolve_spec(c);
        if (c.command == "spectrum") return cmd_spectrum(c, spec, out);
        if (c.command == "verify") return cmd_verify(c, spec, out);
        return cmd_expand(c, spec, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return Usage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return BadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return Numerical;
    }
}

}  // namespace calogero::cli
