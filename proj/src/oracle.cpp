#include "calogero/oracle.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "calogero/errors.hpp"
#include "calogero/grid.hpp"
#include "calogero/specialfn.hpp"

namespace calogero {

using cplx = std::complex<double>;

double potential(const PotentialSpec& v, double x) {
    if (const auto* e = std::get_if<Exact>(&v)) return e->alpha / (x * x);
    if (const auto* c = std::get_if<CutOff>(&v)) return x >= c->r0 ? c->alpha / (x * x) : c->alpha / (c->r0 * c->r0);
    const auto& w = std::get<CutOffPlusWell>(v);
    return x >= w.r0 ? w.alpha / (x * x) : -w.alpha_s / (w.r0 * w.r0);
}

void validate(const PotentialSpec& v) {
    if (const auto* c = std::get_if<CutOff>(&v)) {
        if (!(c->r0 > 0.0)) throw ArgumentError("CutOff: r0 must be positive");
    } else if (const auto* w = std::get_if<CutOffPlusWell>(&v)) {
        if (!(w->r0 > 0.0)) throw ArgumentError("CutOffPlusWell: r0 must be positive");
        if (!std::isfinite(w->alpha_s)) throw ArgumentError("CutOffPlusWell: alpha_s must be finite");
    }
}

namespace {

double alpha_of(const PotentialSpec& v) {
    return std::visit([](const auto& p) { return p.alpha; }, v);
}

// c x^{1/2+nu} (series), or the log partner when log is set
struct SeedTerm {
    cplx c;
    cplx nu;
    bool log;
};
std::vector<SeedTerm> seed_terms(double alpha, const Seed& seed);

void check_robin(const ExtensionSpec& spec, double E, double x) {
    if (spec.regime.region == Region::R1) throw ArgumentError("Robin condition needs an extension parameter");
    if (std::abs(E) * x * x > 100.0) throw ConditioningError("Robin condition: |E| eps^2 too large for the series");
}

double finish_gap(cplx num, cplx den) {
    if (den == 0.0) throw ConditioningError("Robin condition: asymptote vanishes next to eps");
    const double gap = (num / den).real();
    if (!(std::abs(gap) <= 1.0)) throw ConditioningError("Robin coefficient too large for the grid step");
    return gap;
}

// e^z - 1 without cancellation
cplx cexpm1(cplx z) {
    const double sh = std::sin(0.5 * z.imag());
    return cplx(std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * sh * sh, std::exp(z.real()) * std::sin(z.imag()));
}

// Log grid: 1 - phi(s0)/phi(s0 + ds) for phi = x^{-1/2} psi of the selected solution, with each
// Frobenius branch replaced by the exact solution of the recurrence that it approximates
// (exponent nu' with sinh(nu' ds/2) = nu ds/2) and every difference formed without cancellation.
double log_grid_gap(const ExtensionSpec& spec, double E, double x0, double ds) {
    check_robin(spec, E, x0);
    const double s0 = std::log(x0), x2 = x0 * x0;
    cplx num = 0.0, den = 0.0;
    for (const SeedTerm& t : seed_terms(spec.regime.alpha, spec)) {
        // T = sum a_m x^2m, B = -sum H_m a_m x^2m; D* are the increments from x0 to x0 e^ds.
        // Off the log branch the a_m solve the recurrence exactly as well.
        const cplx q = 2.0 / ds * std::asinh(t.nu * ds / 2.0);
        cplx a = 1.0, p = 1.0, T1 = 1.0, dT = 0.0, B1 = 0.0, dB = 0.0;
        double H = 0.0;
        for (int m = 1; m < 500; ++m) {
            if (t.log)
                a *= -E / (4.0 * m * m);
            else
                a *= -E * ds * ds / (4.0 * std::sinh((q + double(m)) * ds) * std::sinh(m * ds));
            p *= x2;
            H += 1.0 / m;
            const cplx v = a * p;
            const double grow = std::expm1(2.0 * m * ds);
            T1 += v * (1.0 + grow);
            dT += v * grow;
            B1 -= H * v * (1.0 + grow);
            dB -= H * v * grow;
            if (std::abs(v) * (1.0 + H) < 1e-18) break;
        }
        if (t.log) {
            num += t.c * (ds * T1 + s0 * dT + dB);
            den += t.c * ((s0 + ds) * T1 + B1);
        } else {
            const cplx x0q = std::exp(q * s0);
            num += t.c * x0q * (cexpm1(q * ds) * T1 + dT);
            den += t.c * x0q * std::exp(q * ds) * T1;
        }
    }
    return finish_gap(num, den);
}

// uniform grid: 1 - psi(x0)/psi(x1) straight from the series
double uniform_grid_gap(const ExtensionSpec& spec, double E, double x0, double x1) {
    check_robin(spec, E, x0);
    cplx f0, f1, d;
    frobenius_seed(spec.regime.alpha, E, spec, x0, f0, d);
    frobenius_seed(spec.regime.alpha, E, spec, x1, f1, d);
    return finish_gap(f1 - f0, f1);
}

}  // namespace

DiscretizedProblem discretize(const PotentialSpec& v, const LeftBC& left, double eps, double X, int N, GridKind kind,
                              double robin_energy) {
    validate(v);
    if (N < 4) throw ArgumentError("discretize: need N >= 4");
    if (!(X > eps) || eps < 0.0) throw ArgumentError("discretize: need 0 <= eps < X");
    const bool robin = std::holds_alternative<RobinFromAsymptote>(left);
    if (robin) {
        const double a = alpha_of(v);
        if (std::abs(std::get<RobinFromAsymptote>(left).spec.regime.alpha - a) > 1e-12 * (1.0 + std::abs(a)))
            throw ArgumentError("discretize: Robin spec and potential disagree on alpha");
    }
    DiscretizedProblem p;
    p.potential = v;
    p.left = left;
    p.kind = kind;
    p.eps = eps;
    p.X = X;
    p.N = N;
    p.robin_energy = robin_energy;

    if (kind == GridKind::Logarithmic) {
        if (!(eps > 0.0)) throw ArgumentError("discretize: logarithmic grid needs eps > 0");
        const double sa = std::log(eps), ds = (std::log(X) - sa) / N;
        const double inv = 1.0 / (ds * ds);
        p.w = inv;
        for (int i = 1; i < N; ++i) {
            const double x = std::exp(sa + i * ds);
            p.nodes.push_back(x);
            p.shift.push_back(0.25 + x * x * potential(v, x));
            p.diag.push_back(2.0 * inv + p.shift.back());
            p.mass.push_back(x * x);
            if (i + 1 < N) p.off.push_back(-inv);
        }
        if (robin) {
            const double d = log_grid_gap(std::get<RobinFromAsymptote>(left).spec, robin_energy, eps, ds);
            p.lead = d + p.shift[0] / inv;
            p.diag[0] = inv * (1.0 + p.lead);
        } else {
            p.lead = 1.0 + p.shift[0] / inv;
        }
    } else {
        const double h = (X - eps) / N;
        const double inv = 1.0 / (h * h);
        if (robin && !(eps > 0.0)) throw ArgumentError("discretize: Robin condition needs eps > 0");
        const double a = alpha_of(v);
        const double xf = eps + h;
        if (std::holds_alternative<Exact>(v) && a != 0.0 && !(std::abs(a) * h * h / (xf * xf) < 1.0))
            throw ArgumentError("discretize: uniform grid too coarse for alpha h^2 / eps^2 < 1");
        p.w = inv;
        for (int i = 1; i < N; ++i) {
            const double x = eps + i * h;
            p.nodes.push_back(x);
            p.shift.push_back(potential(v, x));
            p.diag.push_back(2.0 * inv + p.shift.back());
            p.mass.push_back(1.0);
            if (i + 1 < N) p.off.push_back(-inv);
        }
        const double d =
            robin ? uniform_grid_gap(std::get<RobinFromAsymptote>(left).spec, robin_energy, eps, p.nodes[0]) : 1.0;
        p.lead = d + p.shift[0] / inv;
        p.diag[0] = inv * (1.0 + p.lead);
    }
    return p;
}

int count_below(const DiscretizedProblem& p, double E) {
    // pivots t_i = w (1 + g_i); carrying g avoids the cancellation in 2w + q - w^2 / t, which would
    // otherwise swamp the subdominant branch that carries the extension parameter
    const std::size_t n = p.shift.size();
    const double iw = 1.0 / p.w;
    int count = 0;
    double g = p.lead - E * p.mass[0] * iw;
    for (std::size_t i = 0;;) {
        double t = 1.0 + g;
        if (t == 0.0) t = -std::numeric_limits<double>::min();
        if (t < 0.0) ++count;
        if (++i == n) break;
        g = (p.shift[i] - E * p.mass[i]) * iw + g / t;
    }
    return count;
}

namespace {

void gershgorin(const DiscretizedProblem& p, double& lo, double& hi) {
    const std::size_t n = p.diag.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(p.off[i - 1]) / std::sqrt(p.mass[i] * p.mass[i - 1]);
        if (i + 1 < n) r += std::abs(p.off[i]) / std::sqrt(p.mass[i] * p.mass[i + 1]);
        const double c = p.diag[i] / p.mass[i];
        lo = std::min(lo, c - r);
        hi = std::max(hi, c + r);
    }
    const double pad = 1e-12 * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
    lo -= pad;
    hi += pad;
}

// eigenvalue with 0-based index j, given count(lo) <= j < count(hi)
double bisect_index(const DiscretizedProblem& p, int j, double lo, double hi) {
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) break;
        if (count_below(p, mid) > j)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> fd_eigen(const DiscretizedProblem& p, int k) {
    if (k < 0 || k > int(p.diag.size())) throw ArgumentError("fd_eigen: k exceeds the grid size");
    double lo, hi;
    gershgorin(p, lo, hi);
    std::vector<double> out;
    for (int j = 0; j < k; ++j) out.push_back(bisect_index(p, j, j == 0 ? lo : out.back() - 1e-300, hi));
    for (int j = 1; j < k; ++j) out[j] = std::max(out[j], out[j - 1]);
    return out;
}

std::vector<double> fd_eigen_in(const DiscretizedProblem& p, double lo, double hi) {
    if (!(hi > lo)) throw ArgumentError("fd_eigen_in: need lo < hi");
    const int c0 = count_below(p, lo), c1 = count_below(p, hi);
    std::vector<double> out;
    for (int j = c0; j < c1; ++j) out.push_back(bisect_index(p, j, lo, hi));
    return out;
}

double aligned_epsilon(const ExtensionSpec& spec, double eps) {
    const double sigma = spec.regime.sigma();
    const double ph = sigma * std::log(spec.k0 * eps) + spec.theta();
    double d = std::fmod(ph, kPi);
    if (d < 0.0) d += kPi;
    return eps * std::exp(-d / sigma);
}

double fd_level(const PotentialSpec& v, const LeftBC& left, double eps, double X, int N, double target, GridKind kind) {
    const bool robin = std::holds_alternative<RobinFromAsymptote>(left);
    auto level = [&](double robin_energy) {
        const DiscretizedProblem p = discretize(v, left, eps, X, N, kind, robin_energy);
        const int j = count_below(p, target);
        double lo, hi;
        gershgorin(p, lo, hi);
        double best = std::numeric_limits<double>::quiet_NaN();
        for (int i : {j - 1, j}) {
            if (i < 0 || i >= int(p.diag.size())) continue;
            const double e = bisect_index(p, i, lo, hi);
            if (std::isnan(best) || std::abs(e - target) < std::abs(best - target)) best = e;
        }
        if (std::isnan(best)) throw ConditioningError("fd_level: no level near the target");
        return best;
    };
    if (!robin) return level(0.0);
    // the boundary row depends on the energy, so solve level(E) = E by secant steps; a plain
    // fixed-point iteration diverges for kappa near 1
    double e0 = target, f0 = level(e0) - e0;
    double e1 = e0 + f0, f1 = level(e1) - e1;
    for (int it = 0; it < 60; ++it) {
        if (f1 == 0.0 || std::abs(f1) <= 1e-13 * std::abs(e1)) return e1 + f1;
        if (f1 == f0) break;
        const double e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
        const double f2 = level(e2) - e2;
        if (std::abs(f2) >= std::abs(f1) && it > 2) return e1 + f1;  // roundoff floor
        e0 = e1;
        f0 = f1;
        e1 = e2;
        f1 = f2;
    }
    if (std::abs(f1) <= 1e-7 * std::abs(e1)) return e1 + f1;
    throw ConditioningError("fd_level: Robin energy iteration did not settle");
}

RichardsonReport richardson(const PotentialSpec& v, const LeftBC& left, double eps, double X, int N, double target,
                            GridKind kind) {
    RichardsonReport r;
    r.e_h = fd_level(v, left, eps, X, N, target, kind);
    r.e_h2 = fd_level(v, left, eps, X, 2 * N, target, kind);
    r.e_h4 = fd_level(v, left, eps, X, 4 * N, target, kind);
    r.order = std::log2(std::abs(r.e_h - r.e_h2) / std::abs(r.e_h2 - r.e_h4));
    r.extrapolated = (4.0 * r.e_h4 - r.e_h2) / 3.0;
    r.relative_change = std::abs(r.e_h2 - r.e_h) / std::abs(r.e_h2);
    return r;
}

// ------------------------------------------------------------------ shooting

namespace {

using State = std::array<double, 4>;

cplx order_for(double alpha) {
    const CouplingRegime r = classify(alpha);
    if (r.region == Region::R4) return cplx(0.0, r.sigma());
    return r.kappa();
}

// x^{1/2+nu} sum a_m x^{2m}
void series_branch(cplx nu, cplx W, double x, cplx& f, cplx& df) {
    cplx a = 1.0, s = 1.0, ds = 0.5 + nu;
    const double x2 = x * x;
    cplx p = 1.0;
    for (int m = 1; m < 500; ++m) {
        a *= -W / (4.0 * m * (double(m) + nu));
        p *= x2;
        const cplx t = a * p;
        s += t;
        ds += (0.5 + nu + 2.0 * m) * t;
        if (std::abs(t) < 1e-18 * std::abs(s)) break;
    }
    const cplx xn = std::pow(cplx(x), 0.5 + nu);
    f = xn * s;
    df = xn / x * ds;
}

// log partner at nu = 0: x^{1/2} [ln x sum a_m x^{2m} - sum H_m a_m x^{2m}]
void series_log(cplx W, double x, cplx& f, cplx& df) {
    const double lx = std::log(x), x2 = x * x;
    cplx a = 1.0, p = 1.0;
    cplx S = 1.0, dS = 0.0, B = 0.0, dB = 0.0;  // dS = sum 2m a_m x^{2m}
    double H = 0.0;
    for (int m = 1; m < 500; ++m) {
        a *= -W / (4.0 * m * m);
        p *= x2;
        H += 1.0 / m;
        const cplx t = a * p;
        S += t;
        dS += 2.0 * m * t;
        B -= H * t;
        dB -= 2.0 * m * H * t;
        if (std::abs(t) * (1.0 + H) < 1e-18 * (std::abs(S) + std::abs(B))) break;
    }
    const double sx = std::sqrt(x);
    f = sx * (lx * S + B);
    df = (0.5 * (lx * S + B) + S + lx * dS + dB) / sx;
}

template <class V>
void integrate_ode(const V& pot, cplx W, double xa, cplx psi, cplx dpsi, const std::vector<double>& times,
                   std::vector<cplx>& out_psi, std::vector<cplx>& out_dpsi, double rel_tol) {
    namespace ode = boost::numeric::odeint;
    State s{psi.real(), psi.imag(), dpsi.real(), dpsi.imag()};
    auto rhs = [&](const State& y, State& dy, double x) {
        const double v = pot(x);
        const cplx f = (v - W) * cplx(y[0], y[1]);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = f.real();
        dy[3] = f.imag();
    };
    const double abs_tol = rel_tol * 1e-3 * (std::abs(psi) + std::abs(dpsi) * xa + 1e-300);
    auto stepper = ode::make_controlled(abs_tol, rel_tol, ode::runge_kutta_fehlberg78<State>());
    std::vector<double> t;
    t.push_back(xa);
    t.insert(t.end(), times.begin(), times.end());
    auto obs = [&](const State& y, double x) {
        if (x == xa) return;
        out_psi.emplace_back(y[0], y[1]);
        out_dpsi.emplace_back(y[2], y[3]);
    };
    const double dt = std::max(1e-3 * xa, 1e-12);
    try {
        ode::integrate_times(stepper, rhs, s, t.begin(), t.end(), dt, obs, ode::max_step_checker(200000));
    } catch (const std::runtime_error& e) {
        throw IntegrationError(std::string("shoot: ") + e.what());
    }
    for (const cplx& v : out_psi)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw IntegrationError("shoot: non-finite solution");
}

}  // namespace

namespace {

std::vector<SeedTerm> seed_terms(double alpha, const Seed& seed) {
    const cplx nu = order_for(alpha);
    if (const auto* b = std::get_if<Branch>(&seed)) {
        switch (*b) {
            case Branch::Plus: return {{1.0, nu, false}};
            case Branch::Minus:
                if (nu == 0.0) throw ArgumentError("frobenius_seed: use the Log branch at nu = 0");
                return {{1.0, -nu, false}};
            case Branch::Log:
                if (nu != 0.0) throw ArgumentError("frobenius_seed: Log branch exists only at nu = 0");
                return {{1.0, 0.0, true}};
        }
    }
    const ExtensionSpec& s = std::get<ExtensionSpec>(seed);
    if (std::abs(s.regime.alpha - alpha) > 1e-12 * (1.0 + std::abs(alpha)))
        throw ArgumentError("frobenius_seed: spec and alpha disagree");
    const double k0 = s.k0;
    switch (s.regime.region) {
        case Region::R1: return {{1.0, nu, false}};
        case Region::R2: {
            const double k = s.regime.kappa();
            if (s.lambda_infinite()) return {{std::pow(k0, 0.5 - k), -k, false}};
            return {{std::pow(k0, 0.5 + k), k, false}, {s.lambda() * std::pow(k0, 0.5 - k), -k, false}};
        }
        case Region::R3: {
            const double r = std::sqrt(k0);
            if (s.lambda_infinite()) return {{r, 0.0, false}};
            return {{r * (s.lambda() + std::log(k0)), 0.0, false}, {r, 0.0, true}};
        }
        case Region::R4: {
            const double sg = s.regime.sigma();
            const cplx a = 0.5 * std::sqrt(k0) * std::exp(cplx(0.0, s.theta())) * std::pow(cplx(k0), cplx(0.0, sg));
            return {{a, cplx(0.0, sg), false}, {std::conj(a), cplx(0.0, -sg), false}};
        }
    }
    return {};
}

}  // namespace

void frobenius_seed(double alpha, cplx W, const Seed& seed, double x, cplx& psi, cplx& dpsi) {
    if (!(x > 0.0)) throw ArgumentError("frobenius_seed: x must be positive");
    psi = dpsi = 0.0;
    for (const SeedTerm& t : seed_terms(alpha, seed)) {
        cplx f, df;
        if (t.log)
            series_log(W, x, f, df);
        else
            series_branch(t.nu, W, x, f, df);
        psi += t.c * f;
        dpsi += t.c * df;
    }
}


ShotSolution shoot(double alpha, cplx W, const Seed& seed, double x0, const std::vector<double>& x_out,
                   double rel_tol) {
    if (!(x0 > 0.0)) throw ArgumentError("shoot: x0 must be positive");
    if (x_out.empty()) throw ArgumentError("shoot: no output points");
    for (std::size_t i = 0; i < x_out.size(); ++i)
        if (!(x_out[i] > (i ? x_out[i - 1] : x0))) throw ArgumentError("shoot: output points must ascend past x0");
    cplx p, dp;
    frobenius_seed(alpha, W, seed, x0, p, dp);
    ShotSolution s;
    s.x = x_out;
    integrate_ode([alpha](double x) { return alpha / (x * x); }, W, x0, p, dp, x_out, s.psi, s.dpsi, rel_tol);
    return s;
}

// ---------------------------------------------------------- regularization

std::vector<RegularizationPoint> regularization_experiment(double alpha, const std::vector<double>& r0s,
                                                           const std::function<double(double)>& alpha_s, double k0,
                                                           int window_samples) {
    if (window_samples < 8) throw DegenerateInput("regularization_experiment: fit window needs >= 8 samples");
    const CouplingRegime regime = classify(alpha);
    if (regime.region == Region::R1) throw ArgumentError("regularization_experiment: region R1 has no parameter");
    std::vector<RegularizationPoint> out;
    for (double r0 : r0s) {
        if (!(r0 > 0.0)) throw DegenerateInput("regularization_experiment: r0 must be positive");
        PotentialSpec v = CutOff{alpha, r0};
        if (alpha_s) v = CutOffPlusWell{alpha, r0, alpha_s(r0)};
        auto pot = [&v](double x) { return potential(v, x); };
        // through the core: psi(0) = 0, psi'(0) = 1
        std::vector<cplx> p1, d1;
        integrate_ode(pot, 0.0, 0.0, 0.0, 1.0, {r0}, p1, d1, 1e-13);
        // outside: exact alpha/x^2, sampled on (r0, 10 r0]
        std::vector<double> xs;
        for (int i = 1; i <= window_samples; ++i) xs.push_back(r0 * std::pow(10.0, double(i) / window_samples));
        std::vector<cplx> p2, d2;
        auto outer = [alpha](double x) { return alpha / (x * x); };
        integrate_ode(outer, 0.0, r0, p1[0], d1[0], xs, p2, d2, 1e-13);
        GridFunction g;
        g.nodes = xs;
        for (const cplx& z : p2) g.values.push_back(z.real());
        g.weights.assign(xs.size(), 1.0);
        RegularizationPoint pt;
        pt.r0 = r0;
        pt.coefficients = fit_boundary_coefficients(g, regime, k0, false);
        pt.fitted = extension_from_coefficients(pt.coefficients, regime);
        out.push_back(pt);
    }
    return out;
}

double tuned_well_strength(double alpha, double r0, double theta_star, double k0) {
    const CouplingRegime regime = classify(alpha);
    if (regime.region != Region::R4) throw ArgumentError("tuned_well_strength: region R4 only");
    if (!(r0 > 0.0)) throw ArgumentError("tuned_well_strength: r0 must be positive");
    const double sigma = regime.sigma();
    // r psi'/psi of x^{1/2} cos(sigma ln(k0 x) + theta) at r0
    const double L = 0.5 - sigma * std::tan(sigma * std::log(k0 * r0) + theta_star);
    if (!std::isfinite(L)) throw ConditioningError("tuned_well_strength: asymptote vanishes at r0");
    if (L == 1.0) return 0.0;
    auto solve = [](auto f, double lo, double hi) {
        double flo = f(lo);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            const double fm = f(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    if (L < 1.0) {
        // well: s cot s falls from 1 to -inf on (0, pi)
        const double s = solve([L](double t) { return t / std::tan(t) - L; }, 1e-12, kPi - 1e-15);
        return s * s;
    }
    // core: s coth s rises from 1
    const double s = solve([L](double t) { return t / std::tanh(t) - L; }, 1e-12, L + 1.0);
    return -s * s;
}

}  // namespace calogero
