#pragma once

#include <functional>
#include <vector>

namespace calogero {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre on [-1, 1]
QuadRule gauss_legendre(int n);

// composite rule: GL(n) on each consecutive pair of breakpoints
QuadRule panel_rule(const std::vector<double>& breaks, int n);

// breakpoints a*r^k up to b, then b itself; r > 1
std::vector<double> geometric_breaks(double a, double b, double ratio);

struct AdaptiveResult {
    double value;
    double error;
    int intervals;
};

// adaptive Gauss-Kronrod 7/15 on [a, b]
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol = 1e-12, double abs_tol = 1e-15,
                                  int max_intervals = 20000);

// integral over [a, inf) mapped through x = a + t/(1-t)
AdaptiveResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                     double rel_tol = 1e-12, double abs_tol = 1e-15);

}  // namespace calogero
