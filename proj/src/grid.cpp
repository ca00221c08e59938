#include "calogero/grid.hpp"

#include <cmath>

#include "calogero/errors.hpp"

namespace calogero {

void GridFunction::validate() const {
    if (nodes.size() != values.size() || nodes.size() != weights.size())
        throw ArgumentError("GridFunction: length mismatch");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i]) || !(weights[i] > 0.0))
            throw ArgumentError("GridFunction: bad node or weight");
        if (i > 0 && !(nodes[i] > nodes[i - 1])) throw ArgumentError("GridFunction: nodes must ascend");
        if (!std::isfinite(values[i])) throw InputError("GridFunction: non-finite value");
    }
}

double GridFunction::norm2() const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * values[i] * values[i];
    return s;
}

GridFunction sample(const std::function<double(double)>& f, const QuadRule& rule, Domain domain) {
    GridFunction g;
    g.domain = domain;
    g.nodes = rule.nodes;
    g.weights = rule.weights;
    g.values.reserve(rule.nodes.size());
    for (double x : rule.nodes) g.values.push_back(f(x));
    return g;
}

GridFunction log_samples(const std::function<double(double)>& f, double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ArgumentError("log_samples: bad range");
    GridFunction g;
    for (int i = 0; i < n; ++i) {
        const double x = lo * std::pow(hi / lo, double(i) / (n - 1));
        g.nodes.push_back(x);
        g.values.push_back(f(x));
        g.weights.push_back(1.0);
    }
    return g;
}

}  // namespace calogero
