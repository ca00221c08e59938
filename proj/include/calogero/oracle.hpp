#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "calogero/extensions.hpp"

namespace calogero {

// alpha / x^2 everywhere
struct Exact {
    double alpha;
};
// alpha / x^2 for x >= r0, alpha / r0^2 below
struct CutOff {
    double alpha;
    double r0;
};
// alpha / x^2 for x >= r0, -alpha_s / r0^2 below
struct CutOffPlusWell {
    double alpha;
    double r0;
    double alpha_s;
};
using PotentialSpec = std::variant<Exact, CutOff, CutOffPlusWell>;

double potential(const PotentialSpec& v, double x);
void validate(const PotentialSpec& v);

// ---------------------------------------------------------- finite differences

struct Dirichlet {};
struct RobinFromAsymptote {
    ExtensionSpec spec;
};
using LeftBC = std::variant<Dirichlet, RobinFromAsymptote>;

// Logarithmic: uniform in s = ln x, solved for phi = x^{-1/2} psi with mass x^2.
// Uniform: uniform in x, eps may be 0 when the potential is bounded.
enum class GridKind { Logarithmic, Uniform };

// symmetric tridiagonal pencil A - E M, M diagonal and positive
struct DiscretizedProblem {
    PotentialSpec potential = Exact{0.0};
    LeftBC left = Dirichlet{};
    GridKind kind = GridKind::Logarithmic;
    double eps = 1e-4;
    double X = 40.0;
    int N = 20000;
    double robin_energy = 0.0;

    std::vector<double> nodes;  // unknowns, eps itself excluded
    std::vector<double> diag, off, mass;
    // the same matrix split for accurate inertia: off = -w, diag_i = 2w + shift_i for i > 0,
    // diag_0 = w (1 + lead)
    double w = 0.0;
    double lead = 0.0;
    std::vector<double> shift;
};

// Robin: the value at eps is tied to the first interior node by the ratio of the selected
// Frobenius solution at robin_energy. The leading asymptote alone is off by O(E eps^2) against
// the subleading branch, which is not small for kappa near 1.
DiscretizedProblem discretize(const PotentialSpec& v, const LeftBC& left, double eps, double X, int N,
                              GridKind kind = GridKind::Logarithmic, double robin_energy = 0.0);

// number of eigenvalues below E (Sylvester inertia of A - E M)
int count_below(const DiscretizedProblem& p, double E);
// k lowest eigenvalues, ascending
std::vector<double> fd_eigen(const DiscretizedProblem& p, int k);
// all eigenvalues in [lo, hi), ascending
std::vector<double> fd_eigen_in(const DiscretizedProblem& p, double lo, double hi);

// R4 only: largest eps' <= eps at which the asymptote phase sigma ln(k0 eps') + theta is 0 mod pi,
// so the Robin coefficient stays bounded
double aligned_epsilon(const ExtensionSpec& spec, double eps);

struct RichardsonReport {
    double e_h, e_h2, e_h4;  // eigenvalue at N, 2N, 4N
    double order;            // log2 of the ratio of successive differences
    double extrapolated;
    double relative_change;  // |e_h2 - e_h| / |e_h2|
};
// level nearest to target; with a Robin condition robin_energy is iterated to the level itself
double fd_level(const PotentialSpec& v, const LeftBC& left, double eps, double X, int N, double target,
                GridKind kind = GridKind::Logarithmic);
// fd_level at N, 2N, 4N
RichardsonReport richardson(const PotentialSpec& v, const LeftBC& left, double eps, double X, int N, double target,
                            GridKind kind = GridKind::Logarithmic);

// ------------------------------------------------------------------ shooting

enum class Branch { Plus, Minus, Log };  // x^{1/2+nu}, x^{1/2-nu}, log partner at nu = 0
using Seed = std::variant<Branch, ExtensionSpec>;

struct ShotSolution {
    std::vector<double> x;
    std::vector<std::complex<double>> psi, dpsi;
};

// psi'' = (alpha/x^2 - W) psi from x0 (seeded by the Frobenius series) through x_out (ascending, > x0)
ShotSolution shoot(double alpha, std::complex<double> W, const Seed& seed, double x0, const std::vector<double>& x_out,
                   double rel_tol = 1e-13);
// seed value and derivative at x
void frobenius_seed(double alpha, std::complex<double> W, const Seed& seed, double x, std::complex<double>& psi,
                    std::complex<double>& dpsi);

// ---------------------------------------------------------- regularization

struct RegularizationPoint {
    double r0;
    ExtensionParam fitted;
    BoundaryCoefficients coefficients;
};

// Zero-energy solution with psi(0) = 0 through the regularized core, fitted on (r0, 10 r0].
// alpha_s, when given, adds the square well of that strength for each r0.
std::vector<RegularizationPoint> regularization_experiment(double alpha, const std::vector<double>& r0s,
                                                           const std::function<double(double)>& alpha_s = {},
                                                           double k0 = 1.0, int window_samples = 40);

// well strength that makes the zero-energy solution match theta_star at r0 (negative means a core)
double tuned_well_strength(double alpha, double r0, double theta_star, double k0 = 1.0);

}  // namespace calogero
