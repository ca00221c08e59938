#include "calogero/transform.hpp"

#include <algorithm>
#include <cmath>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

constexpr int kGeoNodes = 8;

void append(QuadRule& q, const QuadRule& p) {
    q.nodes.insert(q.nodes.end(), p.nodes.begin(), p.nodes.end());
    q.weights.insert(q.weights.end(), p.weights.begin(), p.weights.end());
}

std::vector<double> uniform_breaks(double a, double b, int panels) {
    std::vector<double> out;
    for (int i = 0; i <= panels; ++i) out.push_back(i == panels ? b : a + (b - a) * i / panels);
    return out;
}

double default_X(const ExtensionSpec& spec, double X) { return X > 0.0 ? X : kDefaultX / spec.k0; }

}  // namespace

QuadRule x_rule(double X, int n_nodes) {
    if (!(X > 0.0) || n_nodes < 64) throw ArgumentError("x_rule: need X > 0 and at least 64 nodes");
    const double lo = X * 1e-8, mid = X / 40.0;
    std::vector<double> geo = geometric_breaks(lo, mid, 2.0);
    geo.insert(geo.begin(), 0.0);
    QuadRule q = panel_rule(geo, kGeoNodes);
    const int rest = n_nodes - int(q.nodes.size());
    const int per = 16;
    const int panels = std::max(1, rest / per);
    append(q, panel_rule(uniform_breaks(mid, X, panels), per));
    return q;
}

QuadRule energy_rule(double E_max, double X, int n_nodes, double low_power) {
    if (!(E_max > 0.0) || !(X > 0.0) || n_nodes < 64)
        throw ArgumentError("energy_rule: need E_max > 0, X > 0 and at least 64 nodes");
    if (!(low_power >= 1.0 && low_power <= kMaxLowPower))
        throw ArgumentError("energy_rule: low_power must lie in [1, 64]");
    const double K = std::sqrt(E_max);
    const double width = kPi / X;
    const double ku = std::min(width, 0.5 * K);
    const double k1 = K * 1e-7;
    // first panel through k = k1 s^p, which smooths k^{1/p - 1} endpoint behaviour
    QuadRule qk;
    const QuadRule g = gauss_legendre(kGeoNodes);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double t = 0.5 * (g.nodes[i] + 1.0);
        qk.nodes.push_back(k1 * std::pow(t, low_power));
        qk.weights.push_back(0.5 * g.weights[i] * k1 * low_power * std::pow(t, low_power - 1.0));
    }
    append(qk, panel_rule(geometric_breaks(k1, ku, 2.0), kGeoNodes));
    const int rest = n_nodes - int(qk.nodes.size());
    const int panels = std::max(1, int(std::ceil((K - ku) / width)));
    const int per = std::max(4, rest / panels);
    append(qk, panel_rule(uniform_breaks(ku, K, panels), per));
    QuadRule q;
    for (std::size_t i = 0; i < qk.nodes.size(); ++i) {
        const double k = qk.nodes[i];
        q.nodes.push_back(k * k);
        q.weights.push_back(2.0 * k * qk.weights[i]);
    }
    return q;
}

GridFunction x_grid(const ExtensionSpec& spec, double X, int n_nodes) {
    return sample([](double) { return 0.0; }, x_rule(default_X(spec, X), n_nodes), Domain::XSpace);
}

double low_energy_power(const ExtensionSpec& spec) {
    // the density behaves as E^{-kappa} only for lambda = infinity in R2
    if (spec.regime.region != Region::R2 || !spec.lambda_infinite()) return 1.0;
    return std::clamp(1.0 / (2.0 - 2.0 * spec.regime.kappa()), 1.0, kMaxLowPower);
}

GridFunction energy_grid(const ExtensionSpec& spec, double E_max, double X, int n_nodes) {
    const double em = E_max > 0.0 ? E_max : kDefaultEmax * spec.k0 * spec.k0;
    return sample([](double) { return 0.0; }, energy_rule(em, default_X(spec, X), n_nodes, low_energy_power(spec)),
                  Domain::ESpace);
}

// --------------------------------------------------------------- Transformer

Transformer::Transformer(const ExtensionSpec& spec, const GridFunction& x_grid, const GridFunction& e_grid,
                         std::optional<LevelWindow> window)
    : spec_(spec), x_(x_grid), e_(e_grid) {
    if (x_.domain != Domain::XSpace) throw ArgumentError("Transformer: x grid must be tagged XSpace");
    if (e_.domain != Domain::ESpace) throw ArgumentError("Transformer: energy grid must be tagged ESpace");
    x_.values.assign(x_.nodes.size(), 0.0);
    e_.values.assign(e_.nodes.size(), 0.0);
    x_.validate();
    e_.validate();
    if (x_.nodes.front() <= 0.0 || e_.nodes.front() <= 0.0)
        throw ArgumentError("Transformer: grid nodes must be positive");
    bound_ = bound_states(spec, window);

    const std::size_t nx = x_.size(), ne = e_.size();
    SpectralKernel k(spec, true);
    kernel_.resize(ne * nx);
    for (std::size_t j = 0; j < ne; ++j) {
        const auto row = k.continuum_row(e_.nodes[j]);
        double* out = &kernel_[j * nx];
        for (std::size_t i = 0; i < nx; ++i) out[i] = k.continuum(row, x_.nodes[i]);
    }
    bound_kernel_.resize(bound_.size() * nx);
    for (std::size_t n = 0; n < bound_.size(); ++n)
        for (std::size_t i = 0; i < nx; ++i) bound_kernel_[n * nx + i] = bound_[n].profile(x_.nodes[i]);
}

void Transformer::check_psi(const GridFunction& psi) const {
    if (psi.domain != Domain::XSpace) throw ArgumentError("forward: psi must be tagged XSpace");
    if (psi.size() != x_.size()) throw ArgumentError("forward: psi is not sampled on the transformer grid");
    psi.validate();
    for (std::size_t i = 0; i < psi.size(); ++i)
        if (psi.nodes[i] != x_.nodes[i] || psi.weights[i] != x_.weights[i])
            throw ArgumentError("forward: psi is not sampled on the transformer grid");
}

TransformResult Transformer::forward(const GridFunction& psi) const {
    check_psi(psi);
    const std::size_t nx = x_.size(), ne = e_.size();
    std::vector<double> wpsi(nx);
    for (std::size_t i = 0; i < nx; ++i) wpsi[i] = x_.weights[i] * psi.values[i];

    TransformResult r;
    r.spec = spec_;
    r.bound = bound_;
    r.X = x_.nodes.back();
    r.E_max = e_.nodes.back();
    r.phi_c = e_;
    for (std::size_t n = 0; n < bound_.size(); ++n) {
        double s = 0.0;
        for (std::size_t i = 0; i < nx; ++i) s += bound_kernel_[n * nx + i] * wpsi[i];
        r.phi_n.push_back(s);
    }
    for (std::size_t j = 0; j < ne; ++j) {
        const double* row = &kernel_[j * nx];
        double s = 0.0;
        for (std::size_t i = 0; i < nx; ++i) s += row[i] * wpsi[i];
        r.phi_c.values[j] = s;
    }
    r.parseval_lhs = psi.norm2();
    double rhs = 0.0;
    for (double p : r.phi_n) rhs += p * p;
    r.parseval_rhs = rhs + r.phi_c.norm2();
    return r;
}

GridFunction Transformer::inverse(const TransformResult& c) const {
    if (!same_extension(c.spec, spec_)) throw ArgumentError("inverse: coefficients belong to another extension");
    if (c.phi_c.size() != e_.size() || c.phi_n.size() != bound_.size())
        throw ArgumentError("inverse: coefficient grid does not match the transformer");
    for (std::size_t j = 0; j < e_.size(); ++j)
        if (c.phi_c.nodes[j] != e_.nodes[j]) throw ArgumentError("inverse: energy grid mismatch");
    for (std::size_t n = 0; n < bound_.size(); ++n)
        if (c.bound[n].n != bound_[n].n) throw ArgumentError("inverse: bound-state window mismatch");
    const std::size_t nx = x_.size(), ne = e_.size();
    GridFunction out = x_;
    std::fill(out.values.begin(), out.values.end(), 0.0);
    for (std::size_t n = 0; n < bound_.size(); ++n)
        for (std::size_t i = 0; i < nx; ++i) out.values[i] += c.phi_n[n] * bound_kernel_[n * nx + i];
    for (std::size_t j = 0; j < ne; ++j) {
        const double a = e_.weights[j] * c.phi_c.values[j];
        const double* row = &kernel_[j * nx];
        for (std::size_t i = 0; i < nx; ++i) out.values[i] += a * row[i];
    }
    return out;
}

// -------------------------------------------------------------- free forms

namespace {

std::optional<LevelWindow> window_of(const TransformResult& c) {
    if (c.spec.regime.region != Region::R4) return std::nullopt;
    if (c.bound.empty()) throw ArgumentError("inverse: region R4 coefficients carry no levels");
    return LevelWindow{c.bound.front().n, c.bound.back().n};
}

}  // namespace

TransformResult forward(const GridFunction& psi, const ExtensionSpec& spec, const GridFunction& e_grid,
                        std::optional<LevelWindow> window) {
    return Transformer(spec, psi, e_grid, window).forward(psi);
}

GridFunction inverse(const TransformResult& coeffs, const ExtensionSpec& spec, const GridFunction& x_grid) {
    if (!same_extension(coeffs.spec, spec)) throw ArgumentError("inverse: coefficients belong to another extension");
    return Transformer(spec, x_grid, coeffs.phi_c, window_of(coeffs)).inverse(coeffs);
}

double parseval_residual(const GridFunction& psi, const TransformResult& coeffs) {
    const double lhs = psi.norm2();
    if (!(lhs > 0.0)) throw DegenerateInput("parseval_residual: psi has zero norm");
    double rhs = coeffs.phi_c.norm2();
    for (double p : coeffs.phi_n) rhs += p * p;
    return std::abs(lhs - rhs) / lhs;
}

double relative_l2_error(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) throw ArgumentError("relative_l2_error: size mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.nodes[i] != b.nodes[i]) throw ArgumentError("relative_l2_error: node mismatch");
        const double d = a.values[i] - b.values[i];
        num += b.weights[i] * d * d;
        den += b.weights[i] * b.values[i] * b.values[i];
    }
    if (!(den > 0.0)) throw DegenerateInput("relative_l2_error: reference has zero norm");
    return std::sqrt(num / den);
}

}  // namespace calogero
