#include "calogero/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "calogero/errors.hpp"
#include "calogero/spectral.hpp"

namespace calogero {

ScaleAction::ScaleAction(double factor) : l(factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("ScaleAction: l must be a positive finite number");
}

GridFunction scale_transform(const GridFunction& psi, double l) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("scale_transform: l must be a positive finite number");
    if (psi.domain != Domain::XSpace) throw ArgumentError("scale_transform: psi must be tagged XSpace");
    psi.validate();
    GridFunction out = psi;
    const double f = 1.0 / std::sqrt(l);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.nodes[i] *= l;
        out.weights[i] *= l;
        out.values[i] *= f;
    }
    return out;
}

std::vector<double> covariance_grid(const ExtensionSpec& spec) {
    const int n = 120;
    const double lo = 0.05 / spec.k0, hi = 20.0 / spec.k0;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return x;
}

namespace {

ExtensionSpec mapped_spec(const ExtensionSpec& spec, double l, double mu0) {
    if (mu0 <= 0.0) mu0 = spec.k0;
    if (spec.regime.region == Region::R1) return spec;
    ScaleParam p = param_convert(spec, mu0);
    if (p.mu == 0.0 || std::isinf(p.mu)) return spec;  // lambda = 0 or infinity: dilation invariant
    p.mu /= l;
    if (spec.regime.region == Region::R4) {
        const double period = kPi / spec.regime.sigma();
        double t = std::fmod(std::log(p.mu / mu0), period);
        if (t < 0.0) t += period;
        if (t >= period) t = 0.0;
        p.mu = mu0 * std::exp(t);
    }
    return param_from_scale(spec.regime, p, spec.k0, mu0);
}

int window_pad(const ExtensionSpec& spec, double l) {
    return int(std::ceil(std::abs(std::log(l)) * spec.regime.sigma() / kPi)) + 2;
}

// continuum and bound eigenfunctions against their images
double pointwise(const ExtensionSpec& spec, const ExtensionSpec& to, double l, const std::vector<BoundState>& bound,
                 const std::vector<BoundState>& to_bound) {
    const std::vector<double> xs = covariance_grid(spec);
    const SpectralKernel ka(spec, false), kb(to, false);
    const double k2 = spec.k0 * spec.k0;
    const bool fix_sign = spec.regime.region == Region::R4;
    double worst = 0.0;
    for (double e : {0.05, 0.3, 1.0, 3.0, 10.0}) {
        const double E = e * k2;
        const auto ra = ka.continuum_row(E);
        const auto rb = kb.continuum_row(E / (l * l));
        std::vector<double> a(xs.size()), b(xs.size());
        double dot = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            a[i] = ka.continuum(ra, xs[i] / l) / std::sqrt(l);
            b[i] = kb.continuum(rb, xs[i]) / l;
            dot += a[i] * b[i];
        }
        const double s = fix_sign && dot < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(a[i] - s * b[i]));
    }
    for (const auto& st : bound) {
        const double target = st.E / (l * l);
        const BoundState* match = nullptr;
        for (const auto& t : to_bound)
            if (!match || std::abs(t.E - target) < std::abs(match->E - target)) match = &t;
        if (!match) return std::numeric_limits<double>::infinity();
        for (double x : xs)
            worst = std::max(worst, std::abs(st.profile(x / l) / std::sqrt(l) - match->profile(x)));
    }
    return worst;
}

}  // namespace

CovarianceReport covariance_check(const ExtensionSpec& spec, double l, double mu0) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("covariance_check: l must be a positive finite number");
    CovarianceReport r;
    r.maps_to = mapped_spec(spec, l, mu0);
    r.maps_to_self = same_extension(spec, r.maps_to);

    std::vector<BoundState> bound, to_bound;
    if (spec.regime.region == Region::R4) {
        const int pad = window_pad(spec, l);
        bound = bound_states(spec, LevelWindow{-2, 2});
        to_bound = bound_states(r.maps_to, LevelWindow{-2 - pad, 2 + pad});
        for (const auto& s : bound_states(spec, LevelWindow{-5, 5})) r.levels.push_back(s.E);
        for (const auto& s : bound_states(r.maps_to, LevelWindow{-5, 5})) r.mapped_levels.push_back(s.E);
    } else {
        bound = bound_states(spec);
        to_bound = bound_states(r.maps_to);
        for (const auto& s : bound) r.levels.push_back(s.E);
        for (const auto& s : to_bound) r.mapped_levels.push_back(s.E);
    }
    r.pointwise_residual = pointwise(spec, r.maps_to, l, bound, to_bound);

    if (spec.regime.region != Region::R4 && bound.size() != to_bound.size())
        r.level_residual = std::numeric_limits<double>::infinity();
    for (const auto& st : bound) {
        const double target = st.E / (l * l);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& t : to_bound) best = std::min(best, std::abs(t.E - target) / std::abs(target));
        r.level_residual = std::max(r.level_residual, best);
    }
    if (!bound.empty() && !to_bound.empty()) {
        if (spec.regime.region == Region::R4) {
            const BoundState& c = bound[bound.size() / 2];
            const BoundState* m = &to_bound.front();
            for (const auto& t : to_bound)
                if (std::abs(t.E - c.E / (l * l)) < std::abs(m->E - c.E / (l * l))) m = &t;
            r.level_ratio = m->E / c.E;
            r.index_shift = c.n - m->n;
        } else {
            r.level_ratio = to_bound.front().E / bound.front().E;
        }
    }

    if (spec.regime.region == Region::R4) {
        // the spectrum of spec against the spectrum of maps_to, as sets
        const int pad = window_pad(spec, l);
        const auto wide = bound_states(r.maps_to, LevelWindow{-5 - pad, 5 + pad});
        double nearest = 0.0, closest = std::numeric_limits<double>::infinity();
        for (const auto& st : bound_states(spec, LevelWindow{-5, 5})) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& t : wide) best = std::min(best, std::abs(std::log(t.E / st.E)));
            nearest = std::max(nearest, best);
            closest = std::min(closest, best);
        }
        r.set_distance = nearest;
        r.min_level_mismatch = closest;
    }
    return r;
}

}  // namespace calogero
