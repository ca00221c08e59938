#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace testsupport {

using cplx = std::complex<double>;

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// five-point derivative
template <class F>
auto deriv(F f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

template <class F, class G>
cplx wronskian(F f, G g, double x) {
    const double h = 1e-3 * x;
    return cplx(f(x)) * cplx(deriv(g, x, h)) - cplx(deriv(f, x, h)) * cplx(g(x));
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20240611ULL);
    return r;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

}  // namespace testsupport
