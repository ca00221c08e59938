#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <complex>

namespace testsupport {

using mpc = boost::multiprecision::cpp_complex_100;
using mpf = boost::multiprecision::cpp_bin_float_100;

// sum_k (-z^2/4)^k / (k! (1 + nu)_k)
inline mpc series_s(std::complex<double> nu, double x) {
    const mpc v(nu.real(), nu.imag());
    const mpc q = -mpc(x) * mpc(x) / 4;
    mpc term(1), sum(1);
    for (int k = 1; k < 400; ++k) {
        term *= q / (mpc(k) * (mpc(k) + v));
        sum += term;
        if (abs(term) < mpf("1e-60") * abs(sum) && k > 2 * x) break;
    }
    return sum;
}

// Stirling after shifting the argument past 30
inline mpc lgamma_oracle(std::complex<double> z) {
    mpc w(z.real(), z.imag()), shift(0);
    while (abs(w) < 30) {
        shift += log(w);
        w += 1;
    }
    static const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
                               -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};
    const mpf pi = boost::math::constants::pi<mpf>();
    mpc s = (w - mpc(0.5)) * log(w) - w + mpc(log(2 * pi) / 2);
    mpc wp = w;
    for (int k = 1; k <= 10; ++k) {
        s += mpc(mpf(b[k - 1])) / (mpc(2 * k * (2 * k - 1)) * wp);
        wp *= w * w;
    }
    return s - shift;
}

// J_nu(x) from the series with Gamma from the oracle
inline std::complex<double> j_oracle(std::complex<double> nu, double x) {
    const mpc v(nu.real(), nu.imag());
    const mpc g = lgamma_oracle(nu + 1.0);
    const mpc val = exp(v * log(mpc(x) / 2) - g) * series_s(nu, x);
    return {static_cast<double>(val.real()), static_cast<double>(val.imag())};
}

}  // namespace testsupport
