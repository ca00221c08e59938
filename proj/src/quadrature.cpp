#include "calogero/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "calogero/errors.hpp"
#include "calogero/specialfn.hpp"

namespace calogero {

QuadRule gauss_legendre(int n) {
    if (n < 1) throw ArgumentError("gauss_legendre: n >= 1");
    QuadRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-16) break;
        }
        // recompute derivative at the converged node
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        q.nodes[i] = -z;
        q.nodes[n - 1 - i] = z;
        q.weights[i] = q.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return q;
}

QuadRule panel_rule(const std::vector<double>& breaks, int n) {
    const QuadRule g = gauss_legendre(n);
    QuadRule q;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        if (!(b > a)) throw ArgumentError("panel_rule: breakpoints must ascend");
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int i = 0; i < n; ++i) {
            q.nodes.push_back(c + h * g.nodes[i]);
            q.weights.push_back(h * g.weights[i]);
        }
    }
    return q;
}

std::vector<double> geometric_breaks(double a, double b, double ratio) {
    if (!(a > 0.0) || !(b > a) || !(ratio > 1.0)) throw ArgumentError("geometric_breaks");
    std::vector<double> out;
    for (double x = a; x < b * (1.0 - 1e-12); x *= ratio) out.push_back(x);
    out.push_back(b);
    return out;
}

namespace {

// G7K15 abscissae and weights
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = wgk[7] * fc;
    double rg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double s = f(c - dx) + f(c + dx);
        rk += wgk[j] * s;
        if (j % 2 == 1) rg += wg[j / 2] * s;
    }
    return {a, b, rk * h, std::abs((rk - rg) * h)};
}

}  // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_tol, int max_intervals) {
    std::priority_queue<Piece> heap;
    Piece first = gk15(f, a, b);
    heap.push(first);
    double total = first.value, err = first.error;
    int count = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (count >= max_intervals) throw IntegrationError("integrate_adaptive: interval budget exhausted");
        Piece worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(m > worst.a && m < worst.b)) throw IntegrationError("integrate_adaptive: interval underflow");
        Piece l = gk15(f, worst.a, m), r = gk15(f, m, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        ++count;
        if (count % 64 == 0) {
            // refresh sums to shed accumulated rounding
            auto copy = heap;
            total = err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, err, count};
}

AdaptiveResult integrate_to_infinity(const std::function<double(double)>& f, double a, double rel_tol,
                                     double abs_tol) {
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double x = a + t / s;
        const double v = f(x);
        return v == 0.0 ? 0.0 : v / (s * s);
    };
    return integrate_adaptive(g, 0.0, 1.0, rel_tol, abs_tol);
}

}  // namespace calogero
