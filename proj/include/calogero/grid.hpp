#pragma once

#include <functional>
#include <vector>

#include "calogero/quadrature.hpp"

namespace calogero {

enum class Domain { XSpace, ESpace };

// sampled function with quadrature weights
struct GridFunction {
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<double> weights;
    Domain domain = Domain::XSpace;

    std::size_t size() const { return nodes.size(); }
    // throws ArgumentError on broken invariants, InputError on non-finite values
    void validate() const;
    double norm2() const;  // sum w f^2
};

GridFunction sample(const std::function<double(double)>& f, const QuadRule& rule,
                    Domain domain = Domain::XSpace);

// log-spaced samples with unit weights, for boundary fits
GridFunction log_samples(const std::function<double(double)>& f, double lo, double hi, int n);

}  // namespace calogero
