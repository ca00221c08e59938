#include "calogero/extensions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "calogero/errors.hpp"
#include "calogero/specialfn.hpp"

namespace calogero {

const char* region_name(Region r) {
    switch (r) {
        case Region::R1: return "R1";
        case Region::R2: return "R2";
        case Region::R3: return "R3";
        case Region::R4: return "R4";
    }
    return "?";
}

double CouplingRegime::kappa() const {
    if (region == Region::R4) throw ArgumentError("kappa requested in region R4");
    return kappa_or_sigma;
}

double CouplingRegime::sigma() const {
    if (region != Region::R4) throw ArgumentError("sigma requested outside region R4");
    return kappa_or_sigma;
}

CouplingRegime classify(double alpha) {
    if (!std::isfinite(alpha)) throw ArgumentError("classify: alpha must be finite");
    CouplingRegime r;
    r.alpha = alpha;
    const double d = alpha + 0.25;
    if (std::abs(d) <= kR3Tolerance) {
        r.region = Region::R3;
        r.kappa_or_sigma = 0.0;
    } else if (d < 0.0) {
        r.region = Region::R4;
        r.kappa_or_sigma = std::sqrt(-d);
    } else {
        r.region = alpha >= 0.75 ? Region::R1 : Region::R2;
        r.kappa_or_sigma = std::sqrt(d);
    }
    return r;
}

ExtendedReal ExtendedReal::finite(double v) {
    if (!std::isfinite(v)) return infinity();
    return ExtendedReal(false, v);
}

double ExtendedReal::value() const {
    if (inf_) throw ArgumentError("ExtendedReal: value of infinity");
    return v_;
}

bool ExtensionSpec::lambda_infinite() const {
    const auto* l = std::get_if<Lambda>(&param);
    return l && l->lambda.is_infinite();
}

double ExtensionSpec::lambda() const {
    const auto* l = std::get_if<Lambda>(&param);
    if (!l) throw ArgumentError("spec carries no lambda");
    return l->lambda.value();
}

double ExtensionSpec::theta() const {
    const auto* t = std::get_if<Theta>(&param);
    if (!t) throw ArgumentError("spec carries no theta");
    return t->theta;
}

double reduce_theta(double theta) {
    if (!std::isfinite(theta)) throw ArgumentError("theta must be finite");
    double t = std::fmod(theta, kPi);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t = 0.0;
    return t;
}

ExtensionSpec make_spec(double alpha, ExtensionParam param, double k0) {
    if (!(k0 > 0.0) || !std::isfinite(k0)) throw ArgumentError("k0 must be positive");
    ExtensionSpec s;
    s.regime = classify(alpha);
    s.k0 = k0;
    switch (s.regime.region) {
        case Region::R1:
            if (!std::holds_alternative<NoParam>(param))
                throw ArgumentError("region R1 admits no extension parameter");
            break;
        case Region::R2:
        case Region::R3:
            if (!std::holds_alternative<Lambda>(param))
                throw ArgumentError(std::string(region_name(s.regime.region)) + " needs a lambda parameter");
            break;
        case Region::R4:
            if (!std::holds_alternative<Theta>(param)) throw ArgumentError("R4 needs a theta parameter");
            param = Theta{reduce_theta(std::get<Theta>(param).theta)};
            break;
    }
    s.param = param;
    return s;
}

ExtensionSpec spec_from_phase(double alpha, double phase, double k0) {
    const CouplingRegime r = classify(alpha);
    const double h = 0.5 * phase;
    if (r.region == Region::R2) {
        if (std::abs(std::cos(h)) < 1e-15) return make_spec(alpha, Lambda{ExtendedReal::infinity()}, k0);
        return make_spec(alpha, Lambda{ExtendedReal::finite(-std::tan(h))}, k0);
    }
    if (r.region == Region::R3) {
        if (std::abs(std::sin(h)) < 1e-15) return make_spec(alpha, Lambda{ExtendedReal::infinity()}, k0);
        return make_spec(alpha, Lambda{ExtendedReal::finite(-std::cos(h) / std::sin(h))}, k0);
    }
    throw ArgumentError("phase form exists for R2 and R3 only");
}

bool same_extension(const ExtensionSpec& a, const ExtensionSpec& b, double tol) {
    if (a.regime.region != b.regime.region) return false;
    if (std::abs(a.regime.alpha - b.regime.alpha) > tol * (1.0 + std::abs(a.regime.alpha))) return false;
    if (std::abs(a.k0 - b.k0) > tol * a.k0) return false;
    if (a.param.index() != b.param.index()) return false;
    if (const auto* la = std::get_if<Lambda>(&a.param)) {
        const auto& lb = std::get<Lambda>(b.param);
        if (la->lambda.is_infinite() || lb.lambda.is_infinite())
            return la->lambda.is_infinite() && lb.lambda.is_infinite();
        return std::abs(la->lambda.value() - lb.lambda.value()) <= tol * (1.0 + std::abs(la->lambda.value()));
    }
    if (const auto* ta = std::get_if<Theta>(&a.param)) {
        double d = std::abs(ta->theta - std::get<Theta>(b.param).theta);
        d = std::min(d, kPi - d);
        return d <= tol;
    }
    return true;
}

std::string describe(const ExtensionSpec& s) {
    std::ostringstream os;
    os.precision(17);
    os << region_name(s.regime.region) << " alpha=" << s.regime.alpha;
    if (s.regime.region == Region::R4)
        os << " sigma=" << s.regime.kappa_or_sigma << " theta=" << s.theta();
    else
        os << " kappa=" << s.regime.kappa_or_sigma;
    if (const auto* l = std::get_if<Lambda>(&s.param)) {
        os << " lambda=";
        if (l->lambda.is_infinite())
            os << "inf";
        else
            os << l->lambda.value();
    }
    os << " k0=" << s.k0;
    return os.str();
}

const char* sign_name(SignTag s) {
    switch (s) {
        case SignTag::Plus: return "plus";
        case SignTag::Minus: return "minus";
        case SignTag::NotApplicable: return "na";
    }
    return "?";
}

ScaleParam param_convert(const ExtensionSpec& spec, double mu0) {
    const double inf = std::numeric_limits<double>::infinity();
    if (mu0 <= 0.0) mu0 = spec.k0;
    switch (spec.regime.region) {
        case Region::R1: return {inf, SignTag::NotApplicable};
        case Region::R2: {
            if (spec.lambda_infinite()) return {0.0, SignTag::NotApplicable};
            const double lam = spec.lambda();
            if (lam == 0.0) return {inf, SignTag::NotApplicable};
            const double kappa = spec.regime.kappa();
            return {spec.k0 * std::pow(std::abs(lam), -1.0 / (2.0 * kappa)), lam < 0.0 ? SignTag::Minus : SignTag::Plus};
        }
        case Region::R3:
            if (spec.lambda_infinite()) return {inf, SignTag::NotApplicable};
            return {spec.k0 * std::exp(spec.lambda()), SignTag::NotApplicable};
        case Region::R4: {
            const double sigma = spec.regime.sigma();
            // fold ln(mu/mu0) into [0, pi/sigma)
            double t = std::log(spec.k0 / mu0) + spec.theta() / sigma;
            const double period = kPi / sigma;
            t = std::fmod(t, period);
            if (t < 0.0) t += period;
            if (t >= period) t = 0.0;
            return {mu0 * std::exp(t), SignTag::NotApplicable};
        }
    }
    return {inf, SignTag::NotApplicable};
}

ExtensionSpec param_from_scale(const CouplingRegime& regime, const ScaleParam& p, double k0, double mu0) {
    if (mu0 <= 0.0) mu0 = k0;
    if (!(p.mu >= 0.0)) throw ArgumentError("mu must be nonnegative");
    switch (regime.region) {
        case Region::R1: return make_spec(regime.alpha, NoParam{}, k0);
        case Region::R2: {
            if (p.mu == 0.0) return make_spec(regime.alpha, Lambda{ExtendedReal::infinity()}, k0);
            if (std::isinf(p.mu)) return make_spec(regime.alpha, Lambda{ExtendedReal::finite(0.0)}, k0);
            if (p.sign == SignTag::NotApplicable) throw ArgumentError("R2 with finite mu needs a sign");
            const double mag = std::pow(p.mu / k0, -2.0 * regime.kappa());
            const double lam = p.sign == SignTag::Minus ? -mag : mag;
            return make_spec(regime.alpha, Lambda{ExtendedReal::finite(lam)}, k0);
        }
        case Region::R3:
            if (p.mu == 0.0 || std::isinf(p.mu)) return make_spec(regime.alpha, Lambda{ExtendedReal::infinity()}, k0);
            return make_spec(regime.alpha, Lambda{ExtendedReal::finite(std::log(p.mu / k0))}, k0);
        case Region::R4:
            if (!(p.mu > 0.0) || std::isinf(p.mu)) throw ArgumentError("R4 needs 0 < mu < inf");
            return make_spec(regime.alpha, Theta{regime.sigma() * std::log(p.mu / k0)}, k0);
    }
    throw ArgumentError("param_from_scale: unknown region");
}

AsymptoteValue boundary_asymptote(const ExtensionSpec& spec, cplx c, double x) {
    if (!(x > 0.0)) throw DomainError("boundary_asymptote: x must be > 0");
    const double k0 = spec.k0;
    const double sx = std::sqrt(x);
    switch (spec.regime.region) {
        case Region::R1: return {0.0, 0.0};
        case Region::R2: {
            const double kappa = spec.regime.kappa();
            const double a = 0.5 + kappa, b = 0.5 - kappa;
            const double y = k0 * x;
            const double pb = std::pow(y, b), db = b * k0 * std::pow(y, b - 1.0);
            if (spec.lambda_infinite()) return {c * pb, c * db};
            const double lam = spec.lambda();
            const double pa = std::pow(y, a), da = a * k0 * std::pow(y, a - 1.0);
            return {c * (pa + lam * pb), c * (da + lam * db)};
        }
        case Region::R3: {
            if (spec.lambda_infinite()) return {c * sx, c * (0.5 / sx)};
            const double lam = spec.lambda();
            const double L = std::log(k0 * x);
            return {c * sx * (lam + L), c * ((lam + L) * 0.5 / sx + 1.0 / sx)};
        }
        case Region::R4: {
            const double sigma = spec.regime.sigma();
            const double ph = sigma * std::log(k0 * x) + spec.theta();
            return {c * sx * std::cos(ph), c * (0.5 * std::cos(ph) - sigma * std::sin(ph)) / sx};
        }
    }
    return {0.0, 0.0};
}

BoundaryCoefficients fit_boundary_coefficients(const GridFunction& samples, const CouplingRegime& regime, double k0,
                                               bool with_corrections) {
    samples.validate();
    const int n = int(samples.size());
    if (n < 8) throw DegenerateInput("fit_boundary_coefficients: need at least 8 samples");
    if (!(samples.nodes.front() > 0.0)) throw DegenerateInput("fit_boundary_coefficients: samples need x > 0");

    // basis evaluated with the common x^{1/2} factor removed
    std::vector<std::function<double(double)>> cols;
    const Region reg = regime.region;
    if (reg == Region::R1 || reg == Region::R2) {
        const double kappa = regime.kappa();
        cols.push_back([=](double x) { return std::pow(k0, 0.5) * std::pow(k0 * x, kappa); });
        cols.push_back([=](double x) { return std::pow(k0, 0.5) * std::pow(k0 * x, -kappa); });
        if (with_corrections) {
            cols.push_back([=](double x) { return std::pow(k0 * x, 2.0 + kappa); });
            // drop the irregular correction when it nearly coincides with the regular branch
            if (std::abs(2.0 - 2.0 * kappa) >= 0.25)
                cols.push_back([=](double x) { return std::pow(k0 * x, 2.0 - kappa); });
        }
    } else if (reg == Region::R3) {
        cols.push_back([](double) { return 1.0; });
        cols.push_back([=](double x) { return std::log(k0 * x); });
        if (with_corrections) {
            cols.push_back([=](double x) { return (k0 * x) * (k0 * x); });
            cols.push_back([=](double x) { return (k0 * x) * (k0 * x) * std::log(k0 * x); });
        }
    } else {
        const double sigma = regime.sigma();
        cols.push_back([=](double x) { return std::cos(sigma * std::log(k0 * x)); });
        cols.push_back([=](double x) { return std::sin(sigma * std::log(k0 * x)); });
        if (with_corrections) {
            cols.push_back([=](double x) { return (k0 * x) * (k0 * x) * std::cos(sigma * std::log(k0 * x)); });
            cols.push_back([=](double x) { return (k0 * x) * (k0 * x) * std::sin(sigma * std::log(k0 * x)); });
        }
    }
    const int m = int(cols.size());
    Eigen::MatrixXd A(n, m);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const double x = samples.nodes[i];
        for (int j = 0; j < m; ++j) A(i, j) = cols[j](x);
        y(i) = samples.values[i] / std::sqrt(x);
    }
    Eigen::VectorXd colscale(m);
    for (int j = 0; j < m; ++j) {
        colscale(j) = A.col(j).norm();
        if (!(colscale(j) > 0.0) || !std::isfinite(colscale(j)))
            throw DegenerateInput("fit_boundary_coefficients: degenerate basis column");
        A.col(j) /= colscale(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-13);
    if (qr.rank() < m) throw DegenerateInput("fit_boundary_coefficients: rank-deficient fit");
    Eigen::VectorXd coef = qr.solve(y);
    for (int j = 0; j < m; ++j) coef(j) /= colscale(j);

    BoundaryCoefficients out;
    double res2 = 0.0, dat2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = samples.nodes[i];
        double fit = 0.0;
        for (int j = 0; j < m; ++j) fit += coef(j) * cols[j](x);
        res2 += (y(i) - fit) * (y(i) - fit);
        dat2 += y(i) * y(i);
        out.scale1 = std::max(out.scale1, std::abs(coef(0) * cols[0](x)) * std::sqrt(x));
        out.scale2 = std::max(out.scale2, std::abs(coef(1) * cols[1](x)) * std::sqrt(x));
        out.data_scale = std::max(out.data_scale, std::abs(samples.values[i]));
    }
    out.residual = dat2 > 0.0 ? std::sqrt(res2 / dat2) : 0.0;
    if (reg == Region::R4) {
        // real cos/sin pair -> coefficients of x^{1/2}(k0 x)^{+-i sigma}
        const double A0 = coef(0), B0 = coef(1);
        out.c1 = cplx(A0, -B0) * 0.5;
        out.c2 = cplx(A0, B0) * 0.5;
    } else {
        out.c1 = coef(0);
        out.c2 = coef(1);
    }
    return out;
}

ExtensionParam extension_from_coefficients(const BoundaryCoefficients& c, const CouplingRegime& regime) {
    const double tiny = 1e-10 * c.data_scale;
    const bool z1 = !(c.scale1 > tiny), z2 = !(c.scale2 > tiny);
    if (z1 && z2) throw DegenerateInput("both boundary coefficients vanish");
    switch (regime.region) {
        case Region::R1: return NoParam{};
        case Region::R2:
            if (z1) return Lambda{ExtendedReal::infinity()};
            return Lambda{ExtendedReal::finite((c.c2 / c.c1).real())};
        case Region::R3:
            if (z2) return Lambda{ExtendedReal::infinity()};
            return Lambda{ExtendedReal::finite((c.c1 / c.c2).real())};
        case Region::R4: return Theta{reduce_theta(0.5 * std::arg(c.c1 / c.c2))};
    }
    throw ArgumentError("extension_from_coefficients: unknown region");
}

}  // namespace calogero
