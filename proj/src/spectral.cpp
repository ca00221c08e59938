#include "calogero/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

constexpr cplx I(0.0, 1.0);

double lambda_tilde_r2(double lambda, double kappa) {
    return lambda * std::exp(std::lgamma(1.0 - kappa) - std::lgamma(1.0 + kappa));
}

bool integer_order(double kappa) { return std::abs(kappa - std::round(kappa)) < 1e-14; }

}  // namespace

cplx beta_of(cplx W) {
    if (W.imag() < 0.0) throw ArgumentError("beta_of: Im W must be >= 0");
    if (W.imag() == 0.0 && W.real() < 0.0) return cplx(0.0, std::sqrt(-W.real()));
    return std::sqrt(W);
}

double theta_tilde(const ExtensionSpec& spec) {
    return spec.theta() + theta_sigma(spec.regime.sigma());
}

double phase_phi(const ExtensionSpec& spec, double E) {
    if (!(E > 0.0)) throw ArgumentError("phase_phi: E must be positive");
    const double t = E / (4.0 * spec.k0 * spec.k0);
    return spec.regime.sigma() * std::log(t) - 2.0 * theta_tilde(spec);
}

// ------------------------------------------------------------------ triple

FundamentalTriple::FundamentalTriple(const ExtensionSpec& spec, cplx W) : spec_(spec), W_(W) {
    if (W == 0.0) throw ArgumentError("fundamental_solutions: W = 0");
    beta_ = beta_of(W);
    const cplx s = beta_ / (2.0 * spec.k0);
    const double C = kEuler;
    switch (spec.regime.region) {
        case Region::R1: {
            const double k = spec.regime.kappa();
            nu_ = k;
            jp_ = std::make_unique<CylinderJ>(k);
            h_ = std::make_unique<CylinderH1>(k);
            au_p = std::pow(s, -k);
            if (!integer_order(k)) {
                jm_ = std::make_unique<CylinderJ>(-k);
                at_m = std::pow(s, k);
                omega_tilde_ = 2.0 / kPi * std::sin(kPi * k);
            }
            av_h = std::pow(s, k);
            omega_ = cplx(0.0, -2.0 / kPi);
            break;
        }
        case Region::R2: {
            const double k = spec.regime.kappa();
            const double sk = std::sin(kPi * k);
            nu_ = k;
            jp_ = std::make_unique<CylinderJ>(k);
            jm_ = std::make_unique<CylinderJ>(-k);
            h_ = std::make_unique<CylinderH1>(k);
            if (spec.lambda_infinite()) {
                au_m = std::pow(s, k);
                at_p = std::pow(s, -k);
                omega_tilde_ = -2.0 / kPi * sk;
                av_h = I * sk * std::pow(s, k);
                omega_ = 2.0 * sk / kPi * std::exp(-I * kPi * k) * std::pow(s, 2.0 * k);
            } else {
                const double lt = lambda_tilde_r2(spec.lambda(), k);
                au_p = std::pow(s, -k);
                au_m = lt * std::pow(s, k);
                at_m = std::pow(s, k);
                omega_tilde_ = 2.0 / kPi * sk;
                av_h = sk / I * std::exp(I * kPi * k) * std::pow(s, -k);
                omega_ = -2.0 * sk / kPi * (lt + std::pow(-I * s, -2.0 * k));
            }
            break;
        }
        case Region::R3: {
            nu_ = 0.0;
            jp_ = std::make_unique<CylinderJ>(0.0);
            h_ = std::make_unique<CylinderH1>(0.0);
            const cplx L = std::log(s) + C;
            if (spec.lambda_infinite()) {
                au_p = 1.0;
                at_n = 1.0;
                at_p = -L;
                omega_tilde_ = -1.0;
                av_h = (-I * kPi / 2.0) / (L - I * kPi / 2.0);
                omega_ = -1.0 / (L - I * kPi / 2.0);
            } else {
                const double lam = spec.lambda();
                au_p = lam - L;
                au_n = 1.0;
                at_p = 1.0;
                omega_tilde_ = 1.0;
                av_h = -I * kPi / 2.0;
                omega_ = L - lam - I * kPi / 2.0;
            }
            break;
        }
        case Region::R4: {
            const double sg = spec.regime.sigma();
            nu_ = cplx(0.0, sg);
            jp_ = std::make_unique<CylinderJ>(nu_);
            jm_ = std::make_unique<CylinderJ>(-nu_);
            h_ = std::make_unique<CylinderH1>(nu_);
            const double tt = theta_tilde(spec);
            const cplx B = std::exp(I * tt) * std::pow(s, -I * sg);
            const cplx q = std::exp(-I * tt) * std::pow(s, I * sg);
            const cplx A = std::exp(kPi * sg) * q;
            const double sh = std::sinh(kPi * sg);
            au_p = B;
            au_m = q;
            at_p = -I * B;
            at_m = I * q;
            omega_tilde_ = -4.0 / kPi * sh;
            av_h = 2.0 * sh / (A - B);
            omega_ = -I * (4.0 / kPi) * sh * (A + B) / (A - B);
            break;
        }
    }
}

cplx FundamentalTriple::jp(double x) const { return std::sqrt(x) * (*jp_)(beta_ * x); }
cplx FundamentalTriple::jm(double x) const { return std::sqrt(x) * (*jm_)(beta_ * x); }
cplx FundamentalTriple::h(double x) const { return std::sqrt(x) * (*h_)(beta_ * x); }
cplx FundamentalTriple::n0(double x) const { return std::sqrt(x) * (kPi / 2.0) * cyl_n0(beta_ * x); }

cplx FundamentalTriple::u(double x) const {
    if (!(x > 0.0)) throw ArgumentError("FundamentalTriple: x must be positive");
    cplx r = 0.0;
    if (au_p != 0.0) r += au_p * jp(x);
    if (au_m != 0.0) r += au_m * jm(x);
    if (au_n != 0.0) r += au_n * n0(x);
    return r;
}

cplx FundamentalTriple::u_tilde(double x) const {
    if (!(x > 0.0)) throw ArgumentError("FundamentalTriple: x must be positive");
    if (omega_tilde_ == 0.0) throw UnsupportedOrder("u_tilde: integer order in region R1");
    cplx r = 0.0;
    if (at_p != 0.0) r += at_p * jp(x);
    if (at_m != 0.0) r += at_m * jm(x);
    if (at_n != 0.0) r += at_n * n0(x);
    return r;
}

cplx FundamentalTriple::v(double x) const {
    if (!(x > 0.0)) throw ArgumentError("FundamentalTriple: x must be positive");
    return av_h * h(x);
}

cplx omega(const ExtensionSpec& spec, cplx W) { return FundamentalTriple(spec, W).omega(); }

// ------------------------------------------------------------ bound states

namespace {

double bound_profile(const ExtensionSpec& spec, double E, double x) {
    if (!(x > 0.0)) throw ArgumentError("eigenfunction: x must be positive");
    const double a = std::abs(E);
    const double q = std::sqrt(a);
    switch (spec.regime.region) {
        case Region::R2: {
            const double k = spec.regime.kappa();
            const double c = std::sqrt(2.0 * std::sin(kPi * k) / (kPi * k));
            return c * q * std::sqrt(x) * bessel_k(real_order(k), q * x);
        }
        case Region::R3:
            return std::sqrt(2.0) * q * std::sqrt(x) * bessel_k(real_order(0.0), q * x);
        case Region::R4: {
            const double sg = spec.regime.sigma();
            const double c = std::sqrt(2.0 * std::sinh(kPi * sg) * a / (kPi * sg));
            return c * std::sqrt(x) * bessel_k(imag_order(sg), q * x);
        }
        default: break;
    }
    throw ArgumentError("bound profile requested for a region without bound states");
}

BoundState make_bound(const ExtensionSpec& spec, int n, double E, double rho) {
    BoundState b;
    b.n = n;
    b.E = E;
    b.rho = rho;
    b.profile = [spec, E](double x) { return bound_profile(spec, E, x); };
    return b;
}

std::optional<BoundState> single_level(const ExtensionSpec& spec) {
    const double k0s = 4.0 * spec.k0 * spec.k0;
    switch (spec.regime.region) {
        case Region::R2: {
            if (spec.lambda_infinite() || spec.lambda() >= 0.0) return std::nullopt;
            const double k = spec.regime.kappa();
            const double lt = lambda_tilde_r2(spec.lambda(), k);
            const double E = -k0s * std::pow(std::abs(lt), -1.0 / k);
            const double rho = kPi * E / (2.0 * k * std::sin(kPi * k) * lt);
            return make_bound(spec, 0, E, rho);
        }
        case Region::R3: {
            if (spec.lambda_infinite()) return std::nullopt;
            const double E = -k0s * std::exp(2.0 * (spec.lambda() - kEuler));
            return make_bound(spec, 0, E, 2.0 * std::abs(E));
        }
        default: return std::nullopt;
    }
}

}  // namespace

BoundState bound_state(const ExtensionSpec& spec, int n) {
    if (spec.regime.region == Region::R4) {
        const double sg = spec.regime.sigma();
        const double E =
            -4.0 * spec.k0 * spec.k0 * std::exp(2.0 * (kPi / 2.0 + theta_tilde(spec) + kPi * n) / sg);
        if (!std::isfinite(E) || E == 0.0) throw ArgumentError("bound_state: level outside double range");
        const double rho = kPi * std::abs(E) / (2.0 * sg * std::sinh(kPi * sg));
        return make_bound(spec, n, E, rho);
    }
    auto s = single_level(spec);
    if (!s || n != 0) throw ArgumentError("bound_state: no such bound state");
    return *s;
}

std::vector<BoundState> bound_states(const ExtensionSpec& spec, std::optional<LevelWindow> window) {
    std::vector<BoundState> out;
    if (spec.regime.region == Region::R4) {
        const LevelWindow w = window.value_or(kDefaultWindow);
        if (w.n_min > w.n_max) throw ArgumentError("bound_states: empty window");
        for (int n = w.n_min; n <= w.n_max; ++n) out.push_back(bound_state(spec, n));
        return out;
    }
    if (auto s = single_level(spec)) out.push_back(*s);
    return out;
}

// ---------------------------------------------------------------- density

double spectral_density(const ExtensionSpec& spec, double E) {
    if (!(E > 0.0)) return 0.0;
    const double t = E / (4.0 * spec.k0 * spec.k0);
    switch (spec.regime.region) {
        case Region::R1: return 0.5 * std::pow(t, spec.regime.kappa());
        case Region::R2: {
            const double k = spec.regime.kappa();
            if (spec.lambda_infinite()) return 0.5 * std::pow(t, -k);
            const double tk = std::pow(t, k);
            const double g = lambda_tilde_r2(spec.lambda(), k) * tk;
            const double zeta = 1.0 + 2.0 * g * std::cos(kPi * k) + g * g;
            return tk / (2.0 * zeta);
        }
        case Region::R3: {
            if (spec.lambda_infinite()) return 0.5;
            const double a = 0.5 * std::log(t) + kEuler - spec.lambda();
            return 1.0 / (2.0 * (a * a + kPi * kPi / 4.0));
        }
        case Region::R4: {
            const double sg = spec.regime.sigma();
            return 1.0 / (4.0 * (std::cosh(kPi * sg) + std::cos(phase_phi(spec, E))));
        }
    }
    return 0.0;
}

// --------------------------------------------------------- eigenfunctions

SpectralKernel::SpectralKernel(const ExtensionSpec& spec, bool tabulate) : spec_(spec) {
    switch (spec.regime.region) {
        case Region::R1:
            jp_ = std::make_unique<CylinderJ>(spec.regime.kappa());
            break;
        case Region::R2:
            if (!spec.lambda_infinite()) jp_ = std::make_unique<CylinderJ>(spec.regime.kappa());
            if (spec.lambda_infinite() || spec.lambda() != 0.0)
                jm_ = std::make_unique<CylinderJ>(-spec.regime.kappa());
            break;
        case Region::R3:
            jp_ = std::make_unique<CylinderJ>(0.0);
            if (!spec.lambda_infinite()) n0_ = std::make_unique<NeumannZero>(tabulate);
            break;
        case Region::R4:
            jp_ = std::make_unique<CylinderJ>(cplx(0.0, spec.regime.sigma()));
            break;
    }
    if (tabulate) {
        if (jp_) jp_->build_real_table();
        if (jm_) jm_->build_real_table();
    }
}

SpectralKernel::Row SpectralKernel::continuum_row(double E) const {
    if (!(E > 0.0)) throw ArgumentError("continuum eigenfunction: E must be positive");
    Row r;
    r.k = std::sqrt(E);
    const double t = E / (4.0 * spec_.k0 * spec_.k0);
    const double rt2 = std::sqrt(2.0);
    switch (spec_.regime.region) {
        case Region::R1: r.a = 1.0 / rt2; break;
        case Region::R2:
            if (spec_.lambda_infinite()) {
                r.a = 1.0 / rt2;
            } else {
                const double k = spec_.regime.kappa();
                const double g = lambda_tilde_r2(spec_.lambda(), k) * std::pow(t, k);
                const double nrm = std::sqrt(2.0 * (1.0 + 2.0 * g * std::cos(kPi * k) + g * g));
                r.a = 1.0 / nrm;
                r.b = g / nrm;
            }
            break;
        case Region::R3:
            if (spec_.lambda_infinite()) {
                r.a = 1.0 / rt2;
            } else {
                const double lt = spec_.lambda() - kEuler - 0.5 * std::log(t);
                const double nrm = std::sqrt(2.0 * (lt * lt + kPi * kPi / 4.0));
                r.a = lt / nrm;
                r.b = (kPi / 2.0) / nrm;
            }
            break;
        case Region::R4: {
            const double sg = spec_.regime.sigma();
            const double tt = theta_tilde(spec_);
            const double nrm = std::sqrt(std::cosh(kPi * sg) + std::cos(phase_phi(spec_, E)));
            r.a = std::exp(I * (tt - 0.5 * sg * std::log(t))) / nrm;
            break;
        }
    }
    return r;
}

double SpectralKernel::continuum(const Row& row, double x) const {
    if (!(x > 0.0)) throw ArgumentError("eigenfunction: x must be positive");
    const double z = row.k * x;
    const double sx = std::sqrt(x);
    switch (spec_.regime.region) {
        case Region::R1: return sx * row.a.real() * (*jp_)(z).real();
        case Region::R2:
            if (spec_.lambda_infinite()) return sx * row.a.real() * (*jm_)(z).real();
            if (!jm_) return sx * row.a.real() * (*jp_)(z).real();
            return sx * (row.a.real() * (*jp_)(z).real() + row.b * (*jm_)(z).real());
        case Region::R3:
            if (spec_.lambda_infinite()) return sx * row.a.real() * (*jp_)(z).real();
            return sx * (row.a.real() * (*jp_)(z).real() + row.b * (*n0_)(z));
        case Region::R4: return sx * (row.a * (*jp_)(z)).real();
    }
    return 0.0;
}

double SpectralKernel::bound(const BoundState& s, double x) const { return bound_profile(spec_, s.E, x); }

double eigenfunction(const ExtensionSpec& spec, const Which& which, double x) {
    if (!(x > 0.0)) throw ArgumentError("eigenfunction: x must be positive");
    if (const auto* b = std::get_if<Bound>(&which)) {
        const BoundState s = bound_state(spec, b->n);
        return bound_profile(spec, s.E, x);
    }
    const double E = std::get<Continuum>(which).E;
    if (E < 0.0) throw ArgumentError("eigenfunction: continuum energy must be >= 0");
    if (E == 0.0) {
        // limits at the bottom of the continuum where they exist
        const Region r = spec.regime.region;
        if (r == Region::R1 || (r == Region::R2 && !spec.lambda_infinite()) ||
            (r == Region::R3 && !spec.lambda_infinite()))
            return 0.0;
        if (r == Region::R3) return std::sqrt(x / 2.0);
        throw ArgumentError("eigenfunction: no limit at E = 0 for this extension");
    }
    SpectralKernel k(spec, false);
    return k.continuum(E, x);
}

// ---------------------------------------------------------- Green's route

cplx resolvent_kernel(const ExtensionSpec& spec, cplx W, double c) {
    FundamentalTriple t(spec, W);
    return t.u(c) * t.v(c) / t.omega();
}

namespace {

double u_real(const ExtensionSpec& spec, double E, double c) {
    FundamentalTriple t(spec, cplx(E, 0.0));
    const cplx u = t.u(c);
    double scale = std::abs(u);
    if (spec.regime.region != Region::R1 || t.omega_tilde() != 0.0) scale = std::max(scale, std::abs(t.u_tilde(c)));
    // small u(c) amplifies the O(eps) error of the boundary value
    if (!(std::abs(u) > 0.05 * scale)) throw ConditioningError("greens_density: u(c; E) is near zero, move c");
    return u.real();
}

}  // namespace

double greens_density(const ExtensionSpec& spec, double E, double eps, double c) {
    if (!(eps > 0.0 && eps <= 1e-3)) throw ArgumentError("greens_density: eps must lie in (0, 1e-3]");
    if (!(c > 0.0)) throw ArgumentError("greens_density: c must be positive");
    const double u = u_real(spec, E, c);
    return resolvent_kernel(spec, cplx(E, eps), c).imag() / (kPi * u * u);
}

GreensSample greens_density_auto(const ExtensionSpec& spec, double E, double eps) {
    if (!(E > 0.0)) throw ArgumentError("greens_density_auto: E must be positive");
    if (!(eps > 0.0 && eps <= 5e-4)) throw ArgumentError("greens_density_auto: eps must lie in (0, 5e-4]");
    std::optional<GreensSample> best;
    for (double t : {0.7, 0.45, 1.1, 0.23, 1.6, 2.3, 0.9, 3.1}) {
        const double c = t / std::sqrt(E);
        try {
            const double g = greens_density(spec, E, eps, c);
            const double bias = std::abs(greens_density(spec, E, 2.0 * eps, c) - g);
            if (!best || bias < best->bias) best = GreensSample{g, c, bias};
        } catch (const ConditioningError&) {
        }
    }
    if (!best) throw ConditioningError("greens_density_auto: u(c; E) vanishes at every candidate c");
    return *best;
}

double pole_weight(const ExtensionSpec& spec, double E0, double eps, double c) {
    if (!(eps > 0.0 && eps <= 1e-3)) throw ArgumentError("pole_weight: eps must lie in (0, 1e-3]");
    if (!(c > 0.0)) throw ArgumentError("pole_weight: c must be positive");
    const double u = u_real(spec, E0, c);
    return eps * resolvent_kernel(spec, cplx(E0, eps), c).imag() / (u * u);
}

double omega_derivative(const ExtensionSpec& spec, double E) {
    if (!(E < 0.0)) throw ArgumentError("omega_derivative: E must be negative");
    auto w = [&](double e) { return omega(spec, cplx(e, 0.0)).real(); };
    auto d = [&](double h) { return (w(E + h) - w(E - h)) / (2.0 * h); };
    const double h = 1e-3 * std::abs(E);
    const double d1 = d(h), d2 = d(h / 2.0), d3 = d(h / 4.0);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

std::vector<double> find_bound_energies(const ExtensionSpec& spec, double E_lo, double E_hi) {
    if (!(E_lo < E_hi && E_hi < 0.0)) throw ArgumentError("find_bound_energies: need E_lo < E_hi < 0");
    std::vector<double> roots;
    if (spec.regime.region == Region::R1) return roots;
    auto f = [&](double t) { return omega(spec, cplx(-std::exp(t), 0.0)).real(); };
    const double t0 = std::log(-E_hi), t1 = std::log(-E_lo);
    double step = 0.05;
    if (spec.regime.region == Region::R4) step = std::min(step, kPi / (10.0 * spec.regime.sigma()));
    const int n = std::max(2, int(std::ceil((t1 - t0) / step)));
    const double dt = (t1 - t0) / n;
    double a = t0, fa = f(a);
    for (int i = 1; i <= n; ++i) {
        const double b = t0 + i * dt;
        const double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(-std::exp(a));
        } else if (fa * fb < 0.0) {
            double lo = a, hi = b, flo = fa, fhi = fb;
            while (hi - lo > 1e-15 * std::max(1.0, std::abs(lo))) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                    fhi = fm;
                }
            }
            const double tr = 0.5 * (lo + hi);
            // a sign change across a pole leaves |omega| large on both sides of the crossing
            if (std::min(std::abs(flo), std::abs(fhi)) <= std::max(std::abs(fa), std::abs(fb)))
                roots.push_back(-std::exp(tr));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(-std::exp(a));
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace calogero
