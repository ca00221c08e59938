#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "calogero/extensions.hpp"
#include "calogero/specialfn.hpp"

namespace calogero {

// beta = sqrt(W) with Im beta >= 0; W = E + 0i with E < 0 gives i sqrt(|E|)
cplx beta_of(cplx W);

// u (regular at 0, entire in W), u_tilde (entire), v (L^2 at infinity) and
// omega = -Wr(u, v), omega_tilde = -Wr(u, u_tilde).
// R2..R4 satisfy v = u + (omega/omega_tilde) u_tilde.
class FundamentalTriple {
public:
    FundamentalTriple(const ExtensionSpec& spec, cplx W);

    cplx u(double x) const;
    cplx u_tilde(double x) const;
    cplx v(double x) const;
    cplx omega() const { return omega_; }
    cplx omega_tilde() const { return omega_tilde_; }
    cplx W() const { return W_; }
    cplx beta() const { return beta_; }
    const ExtensionSpec& spec() const { return spec_; }

private:
    cplx jp(double x) const;  // x^{1/2} J_nu(beta x)
    cplx jm(double x) const;  // x^{1/2} J_{-nu}(beta x)
    cplx h(double x) const;   // x^{1/2} H1_nu(beta x)
    cplx n0(double x) const;  // x^{1/2} (pi/2) N_0(beta x)

    ExtensionSpec spec_;
    cplx W_, beta_, nu_;
    std::unique_ptr<CylinderJ> jp_, jm_;
    std::unique_ptr<CylinderH1> h_;
    // coefficients: u = au_p jp + au_m jm + au_n n0, likewise u_tilde and v = av h (+ ...)
    cplx au_p = 0.0, au_m = 0.0, au_n = 0.0;
    cplx at_p = 0.0, at_m = 0.0, at_n = 0.0;
    cplx av_h = 0.0, av_p = 0.0, av_n = 0.0;
    cplx omega_ = 0.0, omega_tilde_ = 0.0;
};

cplx omega(const ExtensionSpec& spec, cplx W);

// R4 helpers
double theta_tilde(const ExtensionSpec& spec);
// Phi_theta(E) = sigma ln(E/4k0^2) - 2 theta_tilde, E > 0
double phase_phi(const ExtensionSpec& spec, double E);

struct LevelWindow {
    int n_min = -5;
    int n_max = 5;
};
inline constexpr LevelWindow kDefaultWindow{};

struct BoundState {
    int n = 0;
    double E = 0.0;
    double rho = 0.0;  // residue weight of the spectral measure
    std::function<double(double)> profile;  // normalized, positive
};

// closed-form bound states; the window only matters in R4 (default [-5, 5])
std::vector<BoundState> bound_states(const ExtensionSpec& spec, std::optional<LevelWindow> window = std::nullopt);
// R4 level n without a window
BoundState bound_state(const ExtensionSpec& spec, int n);

// d rho / dE of the continuous part, E > 0
double spectral_density(const ExtensionSpec& spec, double E);

struct Bound {
    int n = 0;
};
struct Continuum {
    double E = 0.0;
};
using Which = std::variant<Bound, Continuum>;

// Normalized eigenfunctions, shared Bessel objects for repeated evaluation.
class SpectralKernel {
public:
    explicit SpectralKernel(const ExtensionSpec& spec, bool tabulate = true);

    struct Row {
        double k = 0.0;
        cplx a = 0.0;  // coefficient of the first kernel
        double b = 0.0;
    };
    Row continuum_row(double E) const;
    double continuum(const Row& row, double x) const;
    double continuum(double E, double x) const { return continuum(continuum_row(E), x); }

    // positive profile, normalized
    double bound(const BoundState& s, double x) const;

    const ExtensionSpec& spec() const { return spec_; }

private:
    ExtensionSpec spec_;
    std::unique_ptr<CylinderJ> jp_, jm_;
    std::unique_ptr<NeumannZero> n0_;
};

double eigenfunction(const ExtensionSpec& spec, const Which& which, double x);

// M(c; W) = u(c) v(c) / omega; W real is the boundary value from above
cplx resolvent_kernel(const ExtensionSpec& spec, cplx W, double c);
// pi^{-1} Im M(c; E + i eps) / u(c; E)^2, M = u v / omega
double greens_density(const ExtensionSpec& spec, double E, double eps, double c);
struct GreensSample {
    double value;
    double c;
    double bias;  // |g(2 eps) - g(eps)|, the size of the O(eps) error
};
// greens_density at the observation point, from a fixed set of c sqrt(E), with the smallest bias
GreensSample greens_density_auto(const ExtensionSpec& spec, double E, double eps);
// eps Im M(c; E0 + i eps) / u(c; E0)^2
double pole_weight(const ExtensionSpec& spec, double E0, double eps, double c);
// d omega / dE at E + i0, E < 0, by Richardson-extrapolated differences
double omega_derivative(const ExtensionSpec& spec, double E);
// zeros of omega(E + i0) in [E_lo, E_hi] (both negative), by bracketing in ln|E|
std::vector<double> find_bound_energies(const ExtensionSpec& spec, double E_lo, double E_hi);

}  // namespace calogero
