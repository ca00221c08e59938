#pragma once

#include <vector>

#include "calogero/extensions.hpp"
#include "calogero/grid.hpp"

namespace calogero {

// dilation x -> l x
struct ScaleAction {
    double l = 1.0;

    explicit ScaleAction(double factor);
    ScaleAction then(const ScaleAction& next) const { return ScaleAction(next.l * l); }
};

// U(l) psi(x) = l^{-1/2} psi(x / l); nodes and weights are multiplied by l
GridFunction scale_transform(const GridFunction& psi, double l);
inline GridFunction scale_transform(const GridFunction& psi, const ScaleAction& a) { return scale_transform(psi, a.l); }

struct CovarianceReport {
    ExtensionSpec maps_to;
    // sup over the standard grid of |U(l) u_E - l^{-1} u'_{E / l^2}|, continuum and bound profiles
    double pointwise_residual = 0.0;
    // max relative deviation of the mapped bound levels from l^{-2} E
    double level_residual = 0.0;
    std::vector<double> levels;         // bound levels of spec (R4: window [-5, 5])
    std::vector<double> mapped_levels;  // bound levels of maps_to, same window
    // E' / E for the lowest level, 0 without bound states; != 1 witnesses the broken symmetry
    double level_ratio = 0.0;
    // R4, log distances between the levels of spec and those of maps_to:
    // smallest over all pairs (> 0 means disjoint), and largest nearest-neighbour (0 means equal sets)
    double min_level_mismatch = 0.0;
    double set_distance = 0.0;
    // R4: level n of spec goes to level n - index_shift of maps_to (taken at n = 0)
    int index_shift = 0;
    bool maps_to_self = false;
};

// mu0 <= 0 means mu0 = k0
CovarianceReport covariance_check(const ExtensionSpec& spec, double l, double mu0 = 0.0);

// standard comparison grid: log-spaced x in [0.05, 20] / k0
std::vector<double> covariance_grid(const ExtensionSpec& spec);

}  // namespace calogero
