#pragma once

#include <optional>
#include <vector>

#include "calogero/grid.hpp"
#include "calogero/spectral.hpp"

namespace calogero {

inline constexpr double kDefaultX = 40.0;       // in units of 1/k0
inline constexpr double kDefaultEmax = 1600.0;  // in units of k0^2
inline constexpr int kDefaultEnodes = 2000;
inline constexpr int kDefaultXnodes = 4000;

// Gauss-Legendre panels on [0, X], geometric towards 0 then uniform
QuadRule x_rule(double X, int n_nodes = kDefaultXnodes);
inline constexpr double kMaxLowPower = 64.0;
// panels in k = sqrt(E): geometric near 0, then at most pi/X wide up to sqrt(E_max);
// weights are for dE. The panel touching 0 is mapped by k ~ s^low_power.
QuadRule energy_rule(double E_max, double X, int n_nodes = kDefaultEnodes, double low_power = 1.0);
// low_power suited to the density of spec near E = 0
double low_energy_power(const ExtensionSpec& spec);

GridFunction x_grid(const ExtensionSpec& spec, double X = 0.0, int n_nodes = kDefaultXnodes);
GridFunction energy_grid(const ExtensionSpec& spec, double E_max = 0.0, double X = 0.0, int n_nodes = kDefaultEnodes);

struct TransformResult {
    ExtensionSpec spec;
    std::vector<BoundState> bound;
    std::vector<double> phi_n;
    GridFunction phi_c;  // ESpace
    double parseval_lhs = 0.0;
    double parseval_rhs = 0.0;
    double X = 0.0;      // extent of the x grid used
    double E_max = 0.0;  // top of the energy grid used
};

// Caches the kernel u_E(x) on a fixed pair of grids so several functions can share it.
class Transformer {
public:
    Transformer(const ExtensionSpec& spec, const GridFunction& x_grid, const GridFunction& e_grid,
                std::optional<LevelWindow> window = std::nullopt);

    TransformResult forward(const GridFunction& psi) const;
    GridFunction inverse(const TransformResult& coeffs) const;

    const GridFunction& xs() const { return x_; }
    const GridFunction& es() const { return e_; }
    const std::vector<BoundState>& bound() const { return bound_; }

private:
    void check_psi(const GridFunction& psi) const;

    ExtensionSpec spec_;
    GridFunction x_, e_;
    std::vector<BoundState> bound_;
    std::vector<double> kernel_;  // row-major, energies by x nodes
    std::vector<double> bound_kernel_;
};

TransformResult forward(const GridFunction& psi, const ExtensionSpec& spec, const GridFunction& e_grid,
                        std::optional<LevelWindow> window = std::nullopt);
// reconstruction on x_grid's nodes; x_grid values are ignored
GridFunction inverse(const TransformResult& coeffs, const ExtensionSpec& spec, const GridFunction& x_grid);
double parseval_residual(const GridFunction& psi, const TransformResult& coeffs);
// ||a - b|| / ||b|| with b's weights; nodes must match
double relative_l2_error(const GridFunction& a, const GridFunction& b);

}  // namespace calogero
