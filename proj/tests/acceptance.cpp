#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/oracle.hpp"
#include "calogero/quadrature.hpp"
#include "calogero/specialfn.hpp"
#include "calogero/spectral.hpp"
#include "calogero/symmetry.hpp"
#include "calogero/transform.hpp"
#include "mp_oracle.hpp"
#include "support.hpp"

using namespace calogero;
using testsupport::rel;
using testsupport::uniform;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// worst value of a named quantity against its bound
struct Tally {
    std::string name;
    double bound;
    double worst = 0.0;
    bool lower = false;  // true: the quantity must stay above the bound

    void add(double v) {
        if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        worst = lower ? (worst == 0.0 ? v : std::min(worst, v)) : std::max(worst, v);
    }
    bool ok() const { return lower ? worst > bound : worst <= bound; }
};

Outcome summarize(const std::vector<Tally>& tallies, bool extra = true, const std::string& note = "") {
    Outcome o;
    o.pass = extra;
    char buf[160];
    for (const Tally& t : tallies) {
        o.pass = o.pass && t.ok();
        std::snprintf(buf, sizeof buf, "%s%s %.2e (%s %.0e)", o.detail.empty() ? "" : ", ", t.name.c_str(), t.worst,
                      t.lower ? ">" : "<=", t.bound);
        o.detail += buf;
    }
    if (!note.empty()) o.detail += (o.detail.empty() ? "" : ", ") + note;
    return o;
}

double mod_pi_distance(double a, double b) {
    double d = std::fmod(a - b, kPi);
    if (d < 0.0) d += kPi;
    return std::min(d, kPi - d);
}

ExtensionSpec random_bound_spec(int k) {
    if (k % 3 == 0) {
        const double kappa = uniform(0.1, 0.9);
        return make_spec(kappa * kappa - 0.25, uniform(-3.0, -0.05), uniform(0.5, 2.0));
    }
    if (k % 3 == 1) return make_spec(-0.25, uniform(-1.5, 1.5), uniform(0.5, 2.0));
    const double sigma = uniform(0.5, 2.0);
    return make_spec(-0.25 - sigma * sigma, Theta{uniform(0.0, kPi)}, uniform(0.5, 2.0));
}

Outcome closed_form_spectra() {
    Tally levels{"max rel level error", 1e-10}, exact{"E=-1,-4 error", 1e-12};
    for (int i = 0; i < 20; ++i) {
        const ExtensionSpec s = random_bound_spec(i);
        const auto b = bound_states(s, LevelWindow{-1, 1});
        const double lo = std::min(b.front().E, b.back().E) * 1.5;
        const double hi = std::max(b.front().E, b.back().E) / 1.5;
        const auto roots = find_bound_energies(s, lo, hi);
        if (roots.size() != b.size()) {
            levels.add(INFINITY);
            continue;
        }
        std::vector<double> es;
        for (const auto& x : b) es.push_back(x.E);
        std::sort(es.begin(), es.end());
        for (std::size_t j = 0; j < es.size(); ++j) levels.add(rel(roots[j], es[j]));
    }
    const auto r2 = find_bound_energies(make_spec(0.0, -1.0), -10.0, -0.1);
    const auto r3 = find_bound_energies(make_spec(-0.25, kEuler), -40.0, -0.1);
    exact.add(r2.size() == 1 ? std::abs(r2[0] + 1.0) : INFINITY);
    exact.add(r3.size() == 1 ? std::abs(r3[0] + 4.0) : INFINITY);
    exact.add(std::abs(bound_states(make_spec(0.0, -1.0)).at(0).E + 1.0));
    exact.add(std::abs(bound_states(make_spec(-0.25, kEuler)).at(0).E + 4.0));
    return summarize({levels, exact});
}

Outcome oracle_agreement() {
    Tally err{"max rel error at N=2e4", 1e-3}, order{"max |order - 2|", 0.2};
    int draws = 0;
    for (int k = 0; draws < 12; ++k) {
        const ExtensionSpec s = random_bound_spec(k);
        double E = 0.0;
        for (const BoundState& b : bound_states(s))
            if (b.E < -1e-3 && b.E > -1e3) {
                E = b.E;
                break;
            }
        if (E == 0.0) continue;
        ++draws;
        double eps = 1e-4 / s.k0;
        if (s.regime.region == Region::R4) eps = aligned_epsilon(s, eps);
        const double X = 40.0 / std::sqrt(-E);
        const RobinFromAsymptote bc{s};
        err.add(rel(fd_level(Exact{s.regime.alpha}, bc, eps, X, 20000, E), E));
        const RichardsonReport coarse = richardson(Exact{s.regime.alpha}, bc, eps, X, 2000, E);
        order.add(std::abs(coarse.order - 2.0));
    }
    return summarize({err, order}, true, std::to_string(draws) + " extensions");
}

Outcome greens_route() {
    const std::vector<ExtensionSpec> specs = {make_spec(1.0),
                                              make_spec(0.2, 0.6),
                                              make_spec(-0.1, -1.3),
                                              make_spec(0.1, Lambda{ExtendedReal::infinity()}),
                                              make_spec(-0.25, 0.4),
                                              make_spec(-0.25, Lambda{ExtendedReal::infinity()}),
                                              make_spec(-0.6, Theta{1.2}),
                                              make_spec(-2.0, Theta{0.3})};
    Tally dens{"max |g - rho|/(1 + rho)", 1e-4}, imag{"R1 max |Im M|, E<0", 1e-10};
    for (const auto& s : specs)
        for (int i = 0; i < 20; ++i) {
            const double E = std::exp(uniform(std::log(0.01), std::log(50.0)));
            const double d = spectral_density(s, E);
            dens.add(std::abs(greens_density_auto(s, E, 1e-6).value - d) / (1.0 + d));
        }
    for (double E : {-0.1, -0.5, -3.0, -20.0})
        for (double c : {0.3, 1.0, 2.0}) imag.add(std::abs(resolvent_kernel(make_spec(0.75), E, c).imag()));
    return summarize({dens, imag});
}

// x^{1/2} J_nu(beta x) and its x-derivative
void half_bessel(double nu, cplx beta, double x, cplx& f, cplx& df) {
    const cplx z = beta * x;
    const cplx j = cyl_j(nu, z);
    const cplx jd = cyl_j(nu - 1.0, z) - nu / z * j;
    f = std::sqrt(x) * j;
    df = j / (2.0 * std::sqrt(x)) + std::sqrt(x) * beta * jd;
}

Outcome wronskians() {
    Tally w1{"max |omega_1 + 2i/pi|", 1e-9}, wr{"max |Wr(u1,u2) + 2 sin(pi kappa)/pi|", 1e-9},
        wv{"R1 max |Wr(u,v) - 2i/pi|", 1e-9};
    for (int i = 0; i < 10; ++i) {
        const cplx W = std::polar(uniform(0.1, 1.0), uniform(0.0, kPi));
        const double alpha = uniform(0.75, 3.0);
        w1.add(std::abs(omega(make_spec(alpha), W) + cplx(0.0, 2.0 / kPi)));
        const double kappa = uniform(0.05, 0.95);
        const cplx beta = beta_of(W);
        const FundamentalTriple t(make_spec(alpha), W);
        for (double x = 0.1; x <= 5.0 + 1e-12; x += 0.35) {
            cplx a, da, b, db;
            half_bessel(kappa, beta, x, a, da);
            half_bessel(-kappa, beta, x, b, db);
            wr.add(std::abs(a * db - da * b + 2.0 * std::sin(kPi * kappa) / kPi));
            const cplx w = testsupport::wronskian([&](double y) { return t.u(y); }, [&](double y) { return t.v(y); }, x);
            wv.add(std::abs(w - cplx(0.0, 2.0 / kPi)));
        }
    }
    return summarize({w1, wr, wv});
}

double norm_sq(const std::function<double(double)>& p, double scale) {
    auto f = [&](double x) { return p(x) * p(x); };
    return integrate_adaptive(f, 0.0, 20.0 * scale, 1e-13).value + integrate_to_infinity(f, 20.0 * scale, 1e-13).value;
}

Outcome normalization() {
    Tally norm{"max |norm - 1|", 1e-8}, orth{"R4 max |<f_n, f_n+1>|", 1e-8};
    const std::vector<ExtensionSpec> single = {make_spec(0.0, -1.0), make_spec(0.4, -2.5, 1.4), make_spec(-0.2, -0.3),
                                               make_spec(-0.25, 0.2), make_spec(-0.25, -1.0, 2.0)};
    for (const auto& s : single) {
        const BoundState b = bound_states(s).at(0);
        norm.add(std::abs(norm_sq(b.profile, 1.0 / std::sqrt(-b.E)) - 1.0));
    }
    for (double sigma : {0.8, 1.5}) {
        const auto b = bound_states(make_spec(-0.25 - sigma * sigma, Theta{0.9}), LevelWindow{-2, 1});
        for (std::size_t i = 0; i < b.size(); ++i) {
            const double scale = 1.0 / std::sqrt(-b[i].E);
            norm.add(std::abs(norm_sq(b[i].profile, scale) - 1.0));
            if (i + 1 == b.size()) continue;
            auto g = [&](double x) { return b[i].profile(x) * b[i + 1].profile(x); };
            double o = 0.0, lo = 0.0;
            for (double hi = 1e-8 * scale; hi < 40.0 * scale; hi *= 10.0) {
                o += integrate_adaptive(g, lo, hi, 1e-13, 1e-16).value;
                lo = hi;
            }
            o += integrate_to_infinity(g, lo, 1e-13, 1e-16).value;
            orth.add(std::abs(o));
        }
    }
    return summarize({norm, orth});
}

Outcome completeness() {
    const std::vector<std::function<double(double)>> fs = {
        [](double x) { return std::pow(x, 1.5) * std::exp(-x); },
        [](double x) { return x * x * std::exp(-x); },
        [](double x) { return x * x * std::exp(-(x - 3) * (x - 3)); },
        [](double x) { return x * x * x * std::exp(-x / 2); },
        [](double x) { return x * x * std::sin(x) * std::exp(-x); }};
    const std::vector<ExtensionSpec> specs = {make_spec(1.0), make_spec(0.0, -1.0),
                                              make_spec(0.0, Lambda{ExtendedReal::infinity()}),
                                              make_spec(-0.25, 0.3), make_spec(-1.25, Theta{0.3}),
                                              make_spec(-0.5, Theta{2.0})};
    Tally parseval{"max Parseval residual", 1e-3}, trip{"max round-trip error", 1e-3};
    for (const auto& s : specs) {
        const GridFunction xg = x_grid(s);
        const Transformer t(s, xg, energy_grid(s));
        for (const auto& f : fs) {
            const GridFunction psi = sample(f, QuadRule{xg.nodes, xg.weights});
            const TransformResult r = t.forward(psi);
            parseval.add(parseval_residual(psi, r));
            trip.add(relative_l2_error(t.inverse(r), psi));
        }
    }
    return summarize({parseval, trip});
}

Outcome regularization() {
    std::vector<double> r2s;
    for (double r = 1e-2; r > 0.9e-5; r /= std::sqrt(10.0)) r2s.push_back(r);
    const auto p2 = regularization_experiment(0.1, r2s);
    bool monotone = true;
    double prev = INFINITY;
    for (const auto& p : p2) {
        const double lam = std::abs(std::get<Lambda>(p.fitted).lambda.value());
        monotone = monotone && lam < prev;
        prev = lam;
    }
    Tally shrink{"R2 |lambda| last/first", 1e-2};
    shrink.add(prev / std::abs(std::get<Lambda>(p2.front().fitted).lambda.value()));

    std::vector<double> r4s;
    for (int j = 0; j < 10; ++j) r4s.push_back(1e-2 * std::pow(0.5, j));
    const double sigma = std::sqrt(0.75);
    const auto p4 = regularization_experiment(-1.0, r4s);
    Tally drift{"R4 max |drift/(sigma ln 2) - 1|", 0.2};
    for (std::size_t i = 1; i < p4.size(); ++i) {
        double d = std::fmod(std::get<Theta>(p4[i].fitted).theta - std::get<Theta>(p4[i - 1].fitted).theta, kPi);
        if (d > kPi / 2) d -= kPi;
        if (d < -kPi / 2) d += kPi;
        drift.add(std::abs(std::abs(d) / (sigma * std::log(2.0)) - 1.0));
    }
    Tally tuned{"tuned well max |theta - theta*|", 0.05};
    for (double ts : {0.7, 2.2}) {
        const auto pts = regularization_experiment(-1.0, r4s, [&](double r0) { return tuned_well_strength(-1.0, r0, ts); });
        for (const auto& p : pts) tuned.add(mod_pi_distance(std::get<Theta>(p.fitted).theta, ts));
    }
    return summarize({shrink, drift, tuned}, monotone, monotone ? "R2 monotone" : "R2 not monotone");
}

Outcome scale_symmetry() {
    Tally r1{"R1 residual", 1e-12}, r23{"R2/R3 residual", 1e-10}, self{"R4 set distance at l=e^{pi/sigma}", 1e-12},
        broken{"R4 min mismatch at generic l", 0.0, 0.0, true};
    for (double l : {0.5, 2.0, 7.3}) {
        const CovarianceReport c = covariance_check(make_spec(1.3), l);
        r1.add(c.pointwise_residual);
    }
    bool law = true;
    for (int i = 0; i < 8; ++i) {
        const double l = std::exp(uniform(-1.5, 1.5));
        const ExtensionSpec s = i % 2 ? make_spec(-0.25, uniform(-2.0, 2.0)) : make_spec(uniform(-0.2, 0.7), uniform(-3.0, 3.0));
        const CovarianceReport c = covariance_check(s, l);
        r23.add(std::max(c.pointwise_residual, c.level_residual));
        const ScaleParam a = param_convert(s), b = param_convert(c.maps_to);
        law = law && rel(b.mu, a.mu / l) <= 1e-12;
    }
    bool shift = true;
    for (double sigma : {0.6, 1.0, 1.7}) {
        const ExtensionSpec s = make_spec(-0.25 - sigma * sigma, Theta{0.8});
        const CovarianceReport c = covariance_check(s, std::exp(kPi / sigma));
        self.add(c.set_distance);
        shift = shift && c.index_shift == 1 && c.maps_to_self;
        for (double l : {1.5, 2.0, 3.7}) broken.add(covariance_check(s, l).min_level_mismatch);
    }
    return summarize({r1, r23, self, broken}, law && shift,
                     std::string("mu -> mu/l ") + (law ? "holds" : "fails") + ", level shift " + (shift ? "1" : "wrong"));
}

Outcome special_functions() {
    std::vector<double> xs = {1e-6, 1e-3, 0.01, 0.1};
    for (int i = 1; i <= 100; ++i) xs.push_back(0.5 * i);
    Tally half{"half-integer", 1e-12}, series{"series oracle", 1e-12}, shot{"shooting", 1e-8};
    for (double x : xs) {
        const double a = std::sqrt(2.0 / (kPi * x));
        half.add(std::abs(bessel_j(real_order(0.5), x).real() - a * std::sin(x)) / a);
        half.add(std::abs(bessel_j(real_order(-0.5), x).real() - a * std::cos(x)) / a);
        half.add(rel(bessel_k(real_order(0.5), x), std::sqrt(kPi / (2.0 * x)) * std::exp(-x)));
    }
    for (cplx nu : {cplx(0.0), cplx(0.3), cplx(1.2), cplx(-0.4), cplx(0.0, 0.5), cplx(0.0, 1.7)})
        for (double x : xs) {
            const cplx ref = testsupport::j_oracle(nu, x);
            const double env = x > 2.0 ? std::sqrt(2.0 / (kPi * x)) * std::cosh(0.5 * kPi * nu.imag()) : 0.0;
            series.add(std::abs(cyl_j(nu, cplx(x, 0.0)) - ref) / std::max(std::abs(ref), env));
        }
    std::vector<double> grid;
    for (int i = 0; i < 79; ++i) grid.push_back(0.5 + 19.5 * i / 78.0);
    const std::vector<std::pair<double, Order>> cases = {
        {0.75, real_order(1.0)}, {0.3, real_order(std::sqrt(0.55))}, {-0.25, real_order(0.0)}, {-1.25, imag_order(1.0)}};
    for (const auto& [alpha, nu] : cases) {
        const ShotSolution s = shoot(alpha, 1.0, Branch::Plus, 1e-3, grid);
        const cplx v = order_value(nu);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const cplx ref = std::exp(v * std::log(2.0) + log_gamma(1.0 + v)) * std::sqrt(grid[i]) * bessel_j(nu, grid[i]);
            num = std::max(num, std::abs(s.psi[i] - ref));
            den = std::max(den, std::abs(ref));
        }
        shot.add(num / den);
    }
    return summarize({half, series, shot});
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"closed-form spectra", closed_form_spectra},
        {"oracle agreement", oracle_agreement},
        {"Green's-function route", greens_route},
        {"Wronskians", wronskians},
        {"normalization and orthogonality", normalization},
        {"completeness", completeness},
        {"regularization phenomenology", regularization},
        {"scale symmetry", scale_symmetry},
        {"special functions", special_functions},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %zu %s: %s | %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
