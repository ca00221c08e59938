#pragma once

#include <array>
#include <complex>
#include <functional>
#include <variant>
#include <vector>

namespace calogero {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338328;
// Euler's constant C, 30 digits
inline constexpr double kEuler = 0.577215664901532860606512090082;

struct RealOrder {
    double kappa;
};
struct ImagOrder {
    double sigma;
};
using Order = std::variant<RealOrder, ImagOrder>;

// validated constructors; |kappa| < 2, sigma > 0
Order real_order(double kappa);
Order imag_order(double sigma);
cplx order_value(const Order& nu);

// J_nu(x) for real x >= 0
cplx bessel_j(const Order& nu, double x);
// K_nu(x), real order 0 <= kappa < 2 or imaginary order
double bessel_k(const Order& nu, double x);
// same, also returning the imaginary part dropped from the complex route
struct KValue {
    double value;
    double discarded_imag;
};
KValue bessel_k_detail(const Order& nu, double x);
// Neumann function N_0 = Y_0
double neumann0(double x);
// R_0(z) = sum_{k>=1} (-1)^k H_k (z/2)^{2k} / (k!)^2
double r0_series(double x);
cplx hankel1(const Order& nu, double x);

cplx log_gamma(cplx z);
// arg Gamma(1 + i sigma), continuous in sigma, theta_sigma(0) = 0
double theta_sigma(double sigma);

// Complex-argument kernels. z must lie in the closed first quadrant, z != 0,
// and |Re nu| < 2.
cplx cyl_j(cplx nu, cplx z);
cplx cyl_h1(cplx nu, cplx z);
cplx cyl_n0(cplx z);
cplx cyl_r0(cplx z);

// piecewise Chebyshev interpolant of a smooth function on [a, b], unit-width pieces
class ChebTable {
public:
    static constexpr int kTerms = 24;
    ChebTable() = default;
    ChebTable(const std::function<cplx(double)>& f, double a, double b);
    bool covers(double x) const { return !coef_.empty() && x > a_ && x < b_; }
    cplx operator()(double x) const;

private:
    double a_ = 0.0, b_ = 0.0;
    std::vector<std::array<cplx, kTerms>> coef_;
};

// J_nu with cached order data; the free functions build one of these per call.
class CylinderJ {
public:
    explicit CylinderJ(cplx nu);
    cplx nu() const { return nu_; }
    cplx operator()(cplx z) const;
    // value and derivative d/dz
    void eval(cplx z, cplx& w, cplx& dw) const;
    // tabulate the mid range on the positive real axis for fast repeated use
    void build_real_table();

private:
    void series(cplx z, cplx& w, cplx& dw) const;

    cplx nu_;
    cplx rgamma_;  // 1/Gamma(1+nu)
    ChebTable table_;
};

class CylinderH1 {
public:
    explicit CylinderH1(cplx nu);
    cplx operator()(cplx z) const;
    void eval(cplx z, cplx& w, cplx& dw) const;

private:
    cplx nu_;
    bool order_zero_;
    bool use_combination_;
    CylinderJ jp_, jm_;
};

// N_0 on the positive real axis, optionally tabulated on (2, 20)
class NeumannZero {
public:
    explicit NeumannZero(bool tabulate);
    double operator()(double x) const;

private:
    ChebTable table_;
};

namespace detail {
// Hankel asymptotic series, kind = +1 for H1, -1 for H2
void hankel_asymptotic(cplx nu, cplx z, int kind, cplx& w, cplx& dw);
// J_nu(x) and, for nu = 0, N_0(x) on the real axis x >= kAsymptoticRadius
// from the P, Q expansions
cplx real_asymptotic_j(cplx nu, double x);
double real_asymptotic_n0(double x);
// Taylor continuation of a Bessel-equation solution along a straight path
void continue_bessel(cplx nu, cplx z_from, cplx z_to, cplx& w, cplx& dw);
inline constexpr double kSeriesRadius = 4.0;
inline constexpr double kAsymptoticRadius = 20.0;
}  // namespace detail

}  // namespace calogero
