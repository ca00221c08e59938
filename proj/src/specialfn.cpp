#include "calogero/specialfn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

constexpr cplx I{0.0, 1.0};

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v); }

void check_first_quadrant(cplx z, const char* who) {
    if (!(z.real() >= 0.0 && z.imag() >= 0.0) || z == cplx(0.0) ||
        !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError(std::string(who) + ": argument must be a nonzero point of the closed first quadrant");
}

void check_order(cplx nu, const char* who) {
    if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()) || std::abs(nu.real()) >= 2.0)
        throw UnsupportedOrder(std::string(who) + ": order outside |Re nu| < 2");
}

constexpr double kLanczos[] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

void taylor_step(cplx nu2, cplx zc, cplx h, cplx& w, cplx& dw) {
    const cplx zc2 = zc * zc;
    const cplx zh = zc * h;
    const cplx h2 = h * h;
    const cplx h3 = h2 * h;
    const cplx h4 = h2 * h2;
    const cplx lead = zc2 - nu2;

    // b_n = a_n h^n for the expansion about zc
    cplx bm2 = 0.0, bm1 = 0.0, b0 = w, b1 = dw * h;
    cplx sw = b0 + b1;
    cplx sd = b1;
    for (int n = 0; n < 600; ++n) {
        const double dn = n;
        const cplx b2 = -(zh * ((dn + 1.0) * (2.0 * dn + 1.0)) * b1 + h2 * (dn * dn + lead) * b0 +
                          2.0 * zc * h3 * bm1 + h4 * bm2) /
                        (zc2 * ((dn + 1.0) * (dn + 2.0)));
        sw += b2;
        sd += (dn + 2.0) * b2;
        bm2 = bm1;
        bm1 = b0;
        b0 = b1;
        b1 = b2;
        if (n >= 4 && std::abs(b1) + std::abs(b0) + std::abs(bm1) <=
                          1e-17 * (std::abs(sw) + std::abs(sd)))
            break;
    }
    w = sw;
    dw = sd / h;
}

}  // namespace

namespace detail {

namespace {

// P and Q of the Hankel expansion
void hankel_pq(cplx nu, double x, cplx& P, cplx& Q) {
    const cplx mu = 4.0 * nu * nu;
    P = 1.0;
    Q = 0.0;
    cplx term = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k * x);
        const double m = std::abs(term);
        if (m > prev) break;
        // i^k pattern: odd k feed Q, even k feed P, signs alternate in pairs
        switch (k % 4) {
            case 1: Q += term; break;
            case 2: P -= term; break;
            case 3: Q -= term; break;
            case 0: P += term; break;
        }
        if (m < 1e-17 * std::abs(P)) break;
        prev = m;
    }
}

}  // namespace

cplx real_asymptotic_j(cplx nu, double x) {
    cplx P, Q;
    hankel_pq(nu, x, P, Q);
    const cplx chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

double real_asymptotic_n0(double x) {
    cplx P, Q;
    hankel_pq(0.0, x, P, Q);
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (P.real() * std::sin(chi) + Q.real() * std::cos(chi));
}

void hankel_asymptotic(cplx nu, cplx z, int kind, cplx& w, cplx& dw) {
    const cplx mu = 4.0 * nu * nu;
    const cplx step = cplx(0.0, double(kind)) / z;
    cplx term = 1.0;
    cplx s = 1.0;
    cplx ds = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (8.0 * k) * step;
        const double m = std::abs(term);
        if (m > prev) break;
        s += term;
        ds -= double(k) * term / z;
        if (m <= 1e-17 * std::abs(s)) break;
        prev = m;
    }
    const cplx phase = z - (0.5 * nu + 0.25) * kPi;
    const cplx f = std::sqrt(2.0 / (kPi * z)) * std::exp(cplx(0.0, double(kind)) * phase);
    w = f * s;
    dw = f * ((cplx(0.0, double(kind)) - 0.5 / z) * s + ds);
}

void continue_bessel(cplx nu, cplx z_from, cplx z_to, cplx& w, cplx& dw) {
    const cplx nu2 = nu * nu;
    cplx z = z_from;
    for (int guard = 0; guard < 10000; ++guard) {
        const cplx d = z_to - z;
        const double dist = std::abs(d);
        if (dist == 0.0) return;
        const double lim = std::min(0.5 * std::abs(z), 2.0);
        if (dist <= lim) {
            taylor_step(nu2, z, d, w, dw);
            return;
        }
        const cplx h = d * (lim / dist);
        taylor_step(nu2, z, h, w, dw);
        z += h;
    }
    throw IntegrationError("continue_bessel: path did not terminate");
}

}  // namespace detail

cplx log_gamma(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("log_gamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && is_integer(z.real()))
        throw DomainError("log_gamma: pole of Gamma");
    if (z.real() < 0.5) {
        // reflection; imaginary part is determined modulo 2 pi here
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    // Lanczos, g = 671/128, 14 terms
    cplx y = z;
    const cplx t = z + 5.24218750000000000;
    cplx ser = 0.999999999999997092;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return (z + 0.5) * std::log(t) - t + std::log(2.5066282746310005 * ser / z);
}

double theta_sigma(double sigma) {
    if (!std::isfinite(sigma)) throw DomainError("theta_sigma: non-finite sigma");
    return log_gamma(cplx(1.0, sigma)).imag();
}

// ---------------------------------------------------------------- CylinderJ

CylinderJ::CylinderJ(cplx nu) : nu_(nu) {
    check_order(nu, "CylinderJ");
    if (nu.imag() == 0.0 && nu.real() < 0.0 && is_integer(nu.real()))
        throw UnsupportedOrder("CylinderJ: negative integer order");
    rgamma_ = std::exp(-log_gamma(1.0 + nu));
}

void CylinderJ::series(cplx z, cplx& w, cplx& dw) const {
    const cplx h = 0.5 * z;
    const cplx q = -h * h;
    const double hm = std::abs(h);
    cplx t = 1.0;
    cplx s = 1.0;
    cplx sd = nu_;
    for (int k = 1; k < 1000; ++k) {
        t *= q / (double(k) * (nu_ + double(k)));
        s += t;
        sd += (nu_ + 2.0 * k) * t;
        if (k > hm && std::abs(t) * (1.0 + 2.0 * k) <= 1e-17 * std::abs(s)) break;
    }
    const cplx pre = std::pow(h, nu_) * rgamma_;
    w = pre * s;
    dw = pre * sd / z;
}

void CylinderJ::eval(cplx z, cplx& w, cplx& dw) const {
    check_first_quadrant(z, "bessel J");
    const double r = std::abs(z);
    if (r >= detail::kAsymptoticRadius) {
        cplx w1, d1, w2, d2;
        detail::hankel_asymptotic(nu_, z, +1, w1, d1);
        detail::hankel_asymptotic(nu_, z, -1, w2, d2);
        w = 0.5 * (w1 + w2);
        dw = 0.5 * (d1 + d2);
        return;
    }
    if (r <= detail::kSeriesRadius || r - z.imag() <= detail::kSeriesRadius) {
        series(z, w, dw);
        return;
    }
    const cplx z0 = z * (detail::kSeriesRadius / r);
    series(z0, w, dw);
    detail::continue_bessel(nu_, z0, z, w, dw);
}

cplx CylinderJ::operator()(cplx z) const {
    if (z.imag() == 0.0) {
        if (table_.covers(z.real())) return table_(z.real());
        if (z.real() >= detail::kAsymptoticRadius) return detail::real_asymptotic_j(nu_, z.real());
    }
    cplx w, dw;
    eval(z, w, dw);
    return w;
}

void CylinderJ::build_real_table() {
    if (table_.covers(0.5 * (detail::kSeriesRadius + detail::kAsymptoticRadius))) return;
    table_ = ChebTable(
        [this](double x) {
            cplx w, dw;
            eval(cplx(x, 0.0), w, dw);
            return w;
        },
        detail::kSeriesRadius, detail::kAsymptoticRadius);
}

ChebTable::ChebTable(const std::function<cplx(double)>& f, double a, double b) : a_(a), b_(b) {
    const int pieces = int(std::ceil(b - a - 1e-12));
    coef_.resize(pieces);
    for (int p = 0; p < pieces; ++p) {
        const double lo = a + p;
        const double hi = lo + 1.0;
        std::array<cplx, kTerms> v{};
        for (int j = 0; j < kTerms; ++j) {
            const double t = std::cos(kPi * (j + 0.5) / kTerms);
            v[j] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
        }
        for (int k = 0; k < kTerms; ++k) {
            cplx c = 0.0;
            for (int j = 0; j < kTerms; ++j) c += v[j] * std::cos(kPi * k * (j + 0.5) / kTerms);
            coef_[p][k] = c * (2.0 / kTerms);
        }
    }
}

cplx ChebTable::operator()(double x) const {
    int p = int(x - a_);
    if (p >= int(coef_.size())) p = int(coef_.size()) - 1;
    if (p < 0) p = 0;
    const double t = 2.0 * (x - (a_ + p)) - 1.0;
    const auto& c = coef_[p];
    cplx b1 = 0.0, b2 = 0.0;
    for (int k = kTerms - 1; k >= 1; --k) {
        const cplx b0 = 2.0 * t * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + 0.5 * c[0];
}

NeumannZero::NeumannZero(bool tabulate) {
    if (tabulate)
        table_ = ChebTable([](double x) { return cplx(cyl_n0(cplx(x, 0.0)).real(), 0.0); }, 2.0,
                           detail::kAsymptoticRadius);
}

double NeumannZero::operator()(double x) const {
    if (table_.covers(x)) return table_(x).real();
    if (x >= detail::kAsymptoticRadius) return detail::real_asymptotic_n0(x);
    return neumann0(x);
}

// --------------------------------------------------------------- CylinderH1

CylinderH1::CylinderH1(cplx nu)
    : nu_(nu),
      order_zero_(nu == cplx(0.0)),
      use_combination_(!order_zero_ && std::abs(std::sin(kPi * nu)) >= 0.2),
      jp_(use_combination_ ? nu : cplx(0.0)),
      jm_(use_combination_ ? -nu : cplx(0.0)) {
    check_order(nu, "CylinderH1");
}

void CylinderH1::eval(cplx z, cplx& w, cplx& dw) const {
    check_first_quadrant(z, "hankel H1");
    const double r = std::abs(z);
    if (r >= detail::kAsymptoticRadius) {
        detail::hankel_asymptotic(nu_, z, +1, w, dw);
        return;
    }
    if (r <= 2.0 && order_zero_) {
        cplx j, dj;
        jp_.eval(z, j, dj);  // jp_ holds order 0 here
        // (pi/2) N0 = (ln(z/2) + C) J0 - R0
        const cplx h = 0.5 * z;
        const cplx q = -h * h;
        cplx t = 1.0, harm = 0.0, r0 = 0.0, dr0 = 0.0;
        for (int k = 1; k < 200; ++k) {
            t *= q / (double(k) * double(k));
            harm += 1.0 / k;
            const cplx term = t * harm;
            r0 += term;
            dr0 += (2.0 * k) * term;
            if (std::abs(term) <= 1e-17 * (std::abs(r0) + 1e-300) && k > 2) break;
        }
        dr0 /= z;
        const cplx lg = std::log(h) + kEuler;
        const cplx n0 = (2.0 / kPi) * (lg * j - r0);
        const cplx dn0 = (2.0 / kPi) * (j / z + lg * dj - dr0);
        w = j + I * n0;
        dw = dj + I * dn0;
        return;
    }
    if (r <= 1.0 && use_combination_) {
        cplx a, da, b, db;
        jm_.eval(z, a, da);
        jp_.eval(z, b, db);
        const cplx e = std::exp(-I * kPi * nu_);
        const cplx den = I * std::sin(kPi * nu_);
        w = (a - e * b) / den;
        dw = (da - e * db) / den;
        return;
    }
    const cplx z1 = z * (detail::kAsymptoticRadius / r);
    detail::hankel_asymptotic(nu_, z1, +1, w, dw);
    detail::continue_bessel(nu_, z1, z, w, dw);
}

cplx CylinderH1::operator()(cplx z) const {
    cplx w, dw;
    eval(z, w, dw);
    return w;
}

// ------------------------------------------------------------ free functions

cplx cyl_j(cplx nu, cplx z) { return CylinderJ(nu)(z); }

cplx cyl_h1(cplx nu, cplx z) { return CylinderH1(nu)(z); }

cplx cyl_r0(cplx z) {
    check_first_quadrant(z, "R0");
    if (std::abs(z) <= detail::kSeriesRadius) {
        const cplx h = 0.5 * z;
        const cplx q = -h * h;
        cplx t = 1.0, harm = 0.0, s = 0.0;
        for (int k = 1; k < 300; ++k) {
            t *= q / (double(k) * double(k));
            harm += 1.0 / k;
            s += t * harm;
            if (k > std::abs(h) && std::abs(t * harm) <= 1e-17 * std::abs(s)) break;
        }
        return s;
    }
    return (std::log(0.5 * z) + kEuler) * cyl_j(0.0, z) - 0.5 * kPi * cyl_n0(z);
}

cplx cyl_n0(cplx z) {
    check_first_quadrant(z, "N0");
    if (std::abs(z) <= 2.0) {
        const cplx j = cyl_j(0.0, z);
        return (2.0 / kPi) * ((std::log(0.5 * z) + kEuler) * j - cyl_r0(z));
    }
    return (cyl_h1(0.0, z) - cyl_j(0.0, z)) / I;
}

Order real_order(double kappa) {
    if (!std::isfinite(kappa) || std::abs(kappa) >= 2.0)
        throw UnsupportedOrder("real order must satisfy |kappa| < 2");
    return RealOrder{kappa};
}

Order imag_order(double sigma) {
    if (!std::isfinite(sigma) || !(sigma > 0.0))
        throw DomainError("imaginary order needs sigma > 0");
    return ImagOrder{sigma};
}

cplx order_value(const Order& nu) {
    if (const auto* r = std::get_if<RealOrder>(&nu)) return {r->kappa, 0.0};
    return {0.0, std::get<ImagOrder>(nu).sigma};
}

cplx bessel_j(const Order& nu, double x) {
    const cplx v = order_value(nu);
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j: x must be >= 0");
    if (x == 0.0) {
        if (v.imag() != 0.0 || v.real() < 0.0)
            throw DomainError("bessel_j: x = 0 needs a nonnegative real order");
        return v.real() == 0.0 ? 1.0 : 0.0;
    }
    return cyl_j(v, cplx(x, 0.0));
}

KValue bessel_k_detail(const Order& nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k: x must be > 0");
    cplx v = order_value(nu);
    if (v.imag() == 0.0) v = std::abs(v.real());
    // K_nu(x) = (i pi / 2) e^{i nu pi / 2} H1_nu(i x)
    const cplx h = cyl_h1(v, cplx(0.0, x));
    const cplx k = 0.5 * kPi * I * std::exp(0.5 * kPi * I * v) * h;
    return {k.real(), k.imag()};
}

double bessel_k(const Order& nu, double x) { return bessel_k_detail(nu, x).value; }

double neumann0(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("neumann0: x must be > 0");
    return cyl_n0(cplx(x, 0.0)).real();
}

double r0_series(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("r0_series: x must be >= 0");
    if (x == 0.0) return 0.0;
    return cyl_r0(cplx(x, 0.0)).real();
}

cplx hankel1(const Order& nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel1: x must be > 0");
    const cplx v = order_value(nu);
    if (v.imag() == 0.0 && v.real() != 0.0 && is_integer(v.real()))
        throw UnsupportedOrder("hankel1: integer nonzero real order");
    return cyl_h1(v, cplx(x, 0.0));
}

}  // namespace calogero
