#pragma once

#include <complex>
#include <string>
#include <variant>

#include "calogero/grid.hpp"

namespace calogero {

using cplx = std::complex<double>;

enum class Region { R1, R2, R3, R4 };
const char* region_name(Region r);

struct CouplingRegime {
    double alpha = 0.0;
    Region region = Region::R2;
    double kappa_or_sigma = 0.5;

    double kappa() const;  // R1..R3
    double sigma() const;  // R4
};

inline constexpr double kR3Tolerance = 1e-12;
CouplingRegime classify(double alpha);

// lambda on the extended real line, +inf identified with -inf
class ExtendedReal {
public:
    static ExtendedReal finite(double v);
    static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }
    bool is_infinite() const { return inf_; }
    double value() const;  // throws for infinity
    bool operator==(const ExtendedReal& o) const { return inf_ == o.inf_ && (inf_ || v_ == o.v_); }

private:
    ExtendedReal(bool inf, double v) : inf_(inf), v_(v) {}
    bool inf_;
    double v_;
};

struct NoParam {};
struct Lambda {
    ExtendedReal lambda;
};
struct Theta {
    double theta;
};
using ExtensionParam = std::variant<NoParam, Lambda, Theta>;

struct ExtensionSpec {
    CouplingRegime regime;
    ExtensionParam param;
    double k0 = 1.0;

    bool lambda_infinite() const;
    double lambda() const;  // finite lambda, throws otherwise
    double theta() const;   // R4 only
};

// reduce to [0, pi)
double reduce_theta(double theta);

// validates the regime/parameter pairing; theta is reduced mod pi
ExtensionSpec make_spec(double alpha, ExtensionParam param = NoParam{}, double k0 = 1.0);
inline ExtensionSpec make_spec(double alpha, double lambda, double k0 = 1.0) {
    return make_spec(alpha, Lambda{ExtendedReal::finite(lambda)}, k0);
}
// angle form: lambda = -tan(phase/2) in R2, -cot(phase/2) in R3
ExtensionSpec spec_from_phase(double alpha, double phase, double k0 = 1.0);

bool same_extension(const ExtensionSpec& a, const ExtensionSpec& b, double tol = 1e-12);
std::string describe(const ExtensionSpec& s);

enum class SignTag { Plus, Minus, NotApplicable };
const char* sign_name(SignTag s);

struct ScaleParam {
    double mu;  // may be +inf
    SignTag sign = SignTag::NotApplicable;
};

// mu0 <= 0 means mu0 = k0
ScaleParam param_convert(const ExtensionSpec& spec, double mu0 = 0.0);
ExtensionSpec param_from_scale(const CouplingRegime& regime, const ScaleParam& p, double k0 = 1.0,
                               double mu0 = 0.0);

struct BoundaryCoefficients {
    cplx c1 = 0.0, c2 = 0.0;
    double residual = 0.0;    // relative rms misfit
    double scale1 = 0.0;      // max |c1 * basis1| over the samples
    double scale2 = 0.0;      // max |c2 * basis2|
    double data_scale = 0.0;  // max |samples|

    cplx c_plus() const { return c1 + cplx(0.0, 1.0) * c2; }
    cplx c_minus() const { return c1 - cplx(0.0, 1.0) * c2; }
};

struct AsymptoteValue {
    cplx value;
    cplx derivative;
};

AsymptoteValue boundary_asymptote(const ExtensionSpec& spec, cplx c, double x);

// Least squares on the two leading asymptotes, plus the first x^2 corrections of each
// when with_corrections is set.
BoundaryCoefficients fit_boundary_coefficients(const GridFunction& samples, const CouplingRegime& regime,
                                               double k0 = 1.0, bool with_corrections = true);

// lambda = c2/c1 (R2), c1/c2 (R3), theta = arg(c1/c2)/2 (R4)
ExtensionParam extension_from_coefficients(const BoundaryCoefficients& c, const CouplingRegime& regime);

}  // namespace calogero
