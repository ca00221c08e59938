#include <algorithm>
#include <cmath>
#include <vector>

#include "calogero/errors.hpp"
#include "calogero/oracle.hpp"
#include "calogero/specialfn.hpp"
#include "calogero/spectral.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace calogero;
using testsupport::rel;
using testsupport::uniform;

namespace {

// distance on the circle R / pi Z
double mod_pi_distance(double a, double b) {
    double d = std::fmod(a - b, kPi);
    if (d < 0.0) d += kPi;
    return std::min(d, kPi - d);
}

double theta_of(const RegularizationPoint& p) { return std::get<Theta>(p.fitted).theta; }

std::vector<double> span(double a, double b, int n) {
    std::vector<double> x;
    for (int i = 0; i < n; ++i) x.push_back(a + (b - a) * i / (n - 1));
    return x;
}

// x^{1/2+nu} series normalization: 2^nu Gamma(1+nu) x^{1/2} J_nu(x) at W = 1
cplx series_reference(const Order& nu, double x) {
    const cplx v = order_value(nu);
    return std::exp(v * std::log(2.0) + log_gamma(1.0 + v)) * std::sqrt(x) * bessel_j(nu, x);
}

struct Draw {
    ExtensionSpec spec;
    double E;
};

// lowest level inside the bandwidth eps << |E|^{-1/2}
Draw random_draw(int k) {
    for (;;) {
        ExtensionSpec s;
        switch (k % 3) {
            case 0: s = make_spec(uniform(-0.24, 0.74), uniform(-3.0, -0.05)); break;
            case 1: s = make_spec(-0.25, uniform(-1.5, 1.5)); break;
            default: s = make_spec(uniform(-2.0, -0.3), Theta{uniform(0.0, kPi)}); break;
        }
        for (const BoundState& b : bound_states(s))
            if (b.E < -1e-3 && b.E > -1e3) return {s, b.E};
    }
}

}  // namespace

// ---------------------------------------------------------- finite differences

TEST_CASE("box ground state") {
    double prev = 0.0;
    for (int N : {1000, 2000, 4000}) {
        const DiscretizedProblem p = discretize(Exact{0.0}, Dirichlet{}, 0.0, kPi, N, GridKind::Uniform);
        const auto e = fd_eigen(p, 3);
        CHECK(rel(e[0], 1.0) < 2e-6);
        CHECK(rel(e[1], 4.0) < 2e-5);
        CHECK(rel(e[2], 9.0) < 1e-4);
        if (prev != 0.0) CHECK(std::abs(e[0] - 1.0) < std::abs(prev - 1.0));
        prev = e[0];
    }
}

TEST_CASE("repulsive coupling has no negative levels") {
    const DiscretizedProblem p = discretize(Exact{2.0}, Dirichlet{}, 1e-4, 60.0, 20000);
    CHECK(count_below(p, 0.0) == 0);
    CHECK(fd_eigen_in(p, -1e6, 0.0).empty());
    CHECK(fd_eigen(p, 1)[0] > 0.0);
}

TEST_CASE("Robin encoding reproduces E = -1") {
    const ExtensionSpec s = make_spec(0.0, -1.0);
    const double e = fd_level(Exact{0.0}, RobinFromAsymptote{s}, 1e-4, 40.0, 20000, -1.0);
    CHECK(rel(e, -1.0) < 1e-3);
    CHECK(rel(e, -1.0) < 1e-6);
    const DiscretizedProblem p = discretize(Exact{0.0}, RobinFromAsymptote{s}, 1e-4, 40.0, 20000,
                                            GridKind::Logarithmic, -1.0);
    const auto levels = fd_eigen_in(p, -10.0, 0.0);
    REQUIRE(levels.size() == 1);
    CHECK(rel(levels[0], -1.0) < 1e-6);
}

TEST_CASE("inertia count is monotone and matches bisection") {
    const ExtensionSpec s = make_spec(-1.25, Theta{0.4});
    const double eps = aligned_epsilon(s, 1e-4);
    const DiscretizedProblem p = discretize(Exact{-1.25}, RobinFromAsymptote{s}, eps, 40.0, 4000);
    int prev = -1;
    for (double E = -1e4; E < 10.0; E = E < -1.0 ? E / 1.7 : E + 0.7) {
        const int c = count_below(p, E);
        CHECK(c >= prev);
        prev = c;
    }
    const auto low = fd_eigen(p, 5);
    for (std::size_t i = 0; i < low.size(); ++i) {
        const double d = 1e-9 * std::abs(low[i]) + 1e-12;
        CHECK(count_below(p, low[i] - d) <= int(i));
        CHECK(count_below(p, low[i] + d) >= int(i) + 1);
    }
    CHECK(std::is_sorted(low.begin(), low.end()));
    CHECK_THROWS_AS(fd_eigen(p, int(p.diag.size()) + 1), ArgumentError);
}

TEST_CASE("pencil is symmetric with positive mass") {
    const ExtensionSpec s = make_spec(0.3, -0.5);
    const DiscretizedProblem p = discretize(Exact{0.3}, RobinFromAsymptote{s}, 1e-4, 40.0, 500);
    REQUIRE(p.off.size() + 1 == p.diag.size());
    for (double m : p.mass) CHECK(m > 0.0);
    for (double o : p.off) CHECK(o == -p.w);
    for (std::size_t i = 1; i < p.diag.size(); ++i) CHECK(rel(p.diag[i], 2.0 * p.w + p.shift[i]) < 1e-15);
    CHECK(rel(p.diag[0], p.w * (1.0 + p.lead)) < 1e-15);
}

TEST_CASE("oracle agrees with closed-form levels") {
    for (int k = 0; k < 12; ++k) {
        const Draw d = random_draw(k);
        double eps = 1e-4 / d.spec.k0;
        if (d.spec.regime.region == Region::R4) eps = aligned_epsilon(d.spec, eps);
        const double X = 40.0 / std::sqrt(-d.E);
        const PotentialSpec v = Exact{d.spec.regime.alpha};
        const RobinFromAsymptote bc{d.spec};
        INFO(describe(d.spec), " E = ", d.E);
        const RichardsonReport fine = richardson(v, bc, eps, X, 20000, d.E);
        CHECK(rel(fine.e_h, d.E) < 1e-3);
        CHECK(fine.relative_change <= 1e-4);
        // order measured where truncation dominates roundoff
        const RichardsonReport coarse = richardson(v, bc, eps, X, 2000, d.E);
        CHECK(coarse.order == doctest::Approx(2.0).epsilon(0.1));
        CHECK(rel(coarse.extrapolated, d.E) < rel(coarse.e_h4, d.E));
    }
}

TEST_CASE("aligned epsilon puts the asymptote at a crest") {
    for (double th : {0.0, 0.3, 2.9}) {
        const ExtensionSpec s = make_spec(-1.0, Theta{th}, 1.7);
        const double sg = s.regime.sigma();
        const double e = aligned_epsilon(s, 1e-4);
        CHECK(e <= 1e-4);
        CHECK(e > 1e-4 * std::exp(-kPi / sg));
        CHECK(mod_pi_distance(sg * std::log(s.k0 * e) + s.theta(), 0.0) < 1e-10);
    }
}

TEST_CASE("finite-difference errors") {
    CHECK_THROWS_AS(discretize(Exact{0.0}, Dirichlet{}, 0.0, 1.0, 2), ArgumentError);
    CHECK_THROWS_AS(discretize(Exact{0.0}, Dirichlet{}, 0.0, 1.0, 100), ArgumentError);  // log grid needs eps > 0
    CHECK_THROWS_AS(discretize(Exact{2.0}, Dirichlet{}, 1e-4, 60.0, 20000, GridKind::Uniform), ArgumentError);
    CHECK_THROWS_AS(discretize(CutOff{0.5, 0.0}, Dirichlet{}, 1e-4, 1.0, 100), ArgumentError);
    CHECK_THROWS_AS(discretize(Exact{2.0}, RobinFromAsymptote{make_spec(2.0)}, 1e-4, 1.0, 100), ArgumentError);
    CHECK_THROWS_AS(discretize(Exact{0.1}, RobinFromAsymptote{make_spec(0.0, -1.0)}, 1e-4, 1.0, 100),
                    ArgumentError);
    // asymptote x + lambda changes sign between eps and the first node (step ln(1e4)/1000 in ln x)
    CHECK_THROWS_AS(discretize(Exact{0.0}, RobinFromAsymptote{make_spec(0.0, -1.0046e-4)}, 1e-4, 1.0, 1000),
                    ConditioningError);
    CHECK_THROWS_AS(fd_eigen_in(discretize(Exact{0.0}, Dirichlet{}, 1e-3, 1.0, 100), 1.0, 0.0), ArgumentError);
}

TEST_CASE("bounded regularized potential on a uniform grid") {
    // the cut-off core is bounded, so eps = 0 is allowed
    const DiscretizedProblem p = discretize(CutOff{-1.0, 0.05}, Dirichlet{}, 0.0, 30.0, 20000, GridKind::Uniform);
    const auto e = fd_eigen_in(p, -1e4, 0.0);
    CHECK(!e.empty());
    const DiscretizedProblem q = discretize(CutOff{-1.0, 0.05}, Dirichlet{}, 1e-5, 30.0, 20000);
    const auto f = fd_eigen_in(q, -1e4, 0.0);
    REQUIRE(f.size() == e.size());
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(rel(e[i], f[i]) < 1e-3);
}

// ------------------------------------------------------------------ shooting

TEST_CASE("shooting reproduces the Bessel solutions") {
    const std::vector<double> xs = span(0.5, 20.0, 79);
    const std::vector<std::pair<double, Order>> cases = {
        {0.75, real_order(1.0)}, {0.3, real_order(std::sqrt(0.55))}, {-0.2, real_order(std::sqrt(0.05))},
        {-0.25, real_order(0.0)}, {-1.25, imag_order(1.0)},
    };
    for (const auto& [alpha, nu] : cases) {
        INFO("alpha = ", alpha);
        const ShotSolution s = shoot(alpha, 1.0, Branch::Plus, 1e-3, xs);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const cplx ref = series_reference(nu, xs[i]);
            num = std::max(num, std::abs(s.psi[i] - ref));
            den = std::max(den, std::abs(ref));
        }
        CHECK(num / den <= 1e-8);
    }
}

TEST_CASE("shot matches u at alpha = 3/4, W = 1") {
    const std::vector<double> xs = span(0.5, 20.0, 40);
    const ShotSolution s = shoot(0.75, 1.0, Branch::Plus, 1e-3, xs);
    const FundamentalTriple t(make_spec(0.75), 1.0);
    const std::size_t m = 1;  // matching point
    const cplx scale = t.u(xs[m]) / s.psi[m];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num = std::max(num, std::abs(scale * s.psi[i] - t.u(xs[i])));
        den = std::max(den, std::abs(t.u(xs[i])));
    }
    CHECK(num / den <= 1e-8);
}

TEST_CASE("spec-seeded shot matches u for complex W") {
    const std::vector<double> xs = span(0.5, 6.0, 23);
    for (const ExtensionSpec& spec :
         {make_spec(0.3, -0.7), make_spec(-0.25, 0.4, 1.3), make_spec(-1.0, Theta{1.1}, 0.8)}) {
        const cplx W(1.5, 0.3);
        // start where the subdominant branch is still well above the integration tolerance
        const ShotSolution s = shoot(spec.regime.alpha, W, spec, 0.05, xs);
        const FundamentalTriple t(spec, W);
        const cplx scale = t.u(xs[0]) / s.psi[0];
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num = std::max(num, std::abs(scale * s.psi[i] - t.u(xs[i])));
            den = std::max(den, std::abs(t.u(xs[i])));
        }
        INFO(describe(spec));
        CHECK(num / den <= 1e-8);
    }
}

TEST_CASE("Wronskian of two shots is constant") {
    const std::vector<double> xs = span(0.5, 5.0, 19);
    struct Pair {
        double alpha;
        Branch a, b;
    };
    for (const Pair& c : {Pair{0.3, Branch::Plus, Branch::Minus}, Pair{-0.25, Branch::Plus, Branch::Log},
                          Pair{-2.0, Branch::Plus, Branch::Minus}}) {
        const cplx W(1.0, 0.2);
        const ShotSolution f = shoot(c.alpha, W, c.a, 1e-3, xs);
        const ShotSolution g = shoot(c.alpha, W, c.b, 1e-3, xs);
        cplx seed_f, dseed_f, seed_g, dseed_g;
        frobenius_seed(c.alpha, W, c.a, 1e-3, seed_f, dseed_f);
        frobenius_seed(c.alpha, W, c.b, 1e-3, seed_g, dseed_g);
        const cplx w0 = seed_f * dseed_g - dseed_f * seed_g;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const cplx w = f.psi[i] * g.dpsi[i] - f.dpsi[i] * g.psi[i];
            CHECK(rel(w, w0) <= 1e-9);
        }
    }
}

TEST_CASE("R4 bound-state shot decays, off-level shot does not") {
    const ExtensionSpec s = make_spec(-1.25, Theta{0.0});
    const double E = bound_state(s, 0).E;
    const double L = 1.0 / std::sqrt(-E);
    const std::vector<double> xs = span(0.05 * L, 12.0 * L, 200);
    auto tail = [&](double W) {
        const ShotSolution sh = shoot(-1.25, W, s, 1e-4 * L, xs);
        double peak = 0.0;
        for (const cplx& v : sh.psi) peak = std::max(peak, std::abs(v));
        return std::abs(sh.psi.back()) / peak;
    };
    CHECK(tail(E) < 1e-3);
    CHECK(tail(1.05 * E) > 0.1);
    CHECK(tail(0.95 * E) > 0.1);
}

TEST_CASE("shooting errors") {
    CHECK_THROWS_AS(shoot(0.3, 1.0, Branch::Plus, 0.0, {1.0}), ArgumentError);
    CHECK_THROWS_AS(shoot(0.3, 1.0, Branch::Plus, 1e-3, {}), ArgumentError);
    CHECK_THROWS_AS(shoot(0.3, 1.0, Branch::Plus, 1e-3, {1.0, 0.5}), ArgumentError);
    CHECK_THROWS_AS(shoot(0.3, 1.0, Branch::Log, 1e-3, {1.0}), ArgumentError);
    CHECK_THROWS_AS(shoot(-0.25, 1.0, Branch::Minus, 1e-3, {1.0}), ArgumentError);
    CHECK_THROWS_AS(shoot(0.3, 1.0, make_spec(0.2, -1.0), 1e-3, {1.0}), ArgumentError);
    // exponential growth past the double range
    CHECK_THROWS_AS(shoot(0.3, -1e6, Branch::Plus, 1e-3, {1e3}), IntegrationError);
}

// ---------------------------------------------------------- regularization

TEST_CASE("R2 cut-off drives lambda to zero") {
    std::vector<double> r0s;
    for (double r = 1e-2; r > 0.9e-5; r /= std::sqrt(10.0)) r0s.push_back(r);
    const auto pts = regularization_experiment(0.1, r0s);
    REQUIRE(pts.size() == r0s.size());
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        const double lam = std::get<Lambda>(p.fitted).lambda.value();
        CHECK(std::abs(lam) < prev);
        prev = std::abs(lam);
        CHECK(p.coefficients.residual < 1e-10);
    }
    const double first = std::abs(std::get<Lambda>(pts.front().fitted).lambda.value());
    CHECK(prev < 1e-2 * first);
    // scale invariance at E = 0: lambda is exactly proportional to r0^{2 kappa}
    const double kappa = std::sqrt(0.35);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double ratio = std::get<Lambda>(pts[i].fitted).lambda.value() /
                             std::get<Lambda>(pts[i - 1].fitted).lambda.value();
        CHECK(rel(ratio, std::pow(r0s[i] / r0s[i - 1], 2.0 * kappa)) < 1e-6);
    }
}

TEST_CASE("R4 cut-off phase drifts by sigma ln 2 per halving") {
    std::vector<double> r0s;
    for (int j = 0; j < 8; ++j) r0s.push_back(1e-2 * std::pow(0.5, j));
    const auto pts = regularization_experiment(-1.0, r0s);
    const double sigma = std::sqrt(0.75);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double d = std::fmod(theta_of(pts[i]) - theta_of(pts[i - 1]), kPi);
        if (d > kPi / 2) d -= kPi;
        if (d < -kPi / 2) d += kPi;
        CHECK(std::abs(d) == doctest::Approx(sigma * std::log(2.0)).epsilon(0.2));
    }
    // no limit: the spread of theta over the run covers most of the circle
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, mod_pi_distance(theta_of(p), theta_of(pts.front())));
    CHECK(worst > 1.0);
}

TEST_CASE("tuned square well pins theta") {
    for (double theta_star : {0.7, 2.2}) {
        std::vector<double> r0s;
        for (int j = 0; j < 10; ++j) r0s.push_back(1e-2 * std::pow(0.5, j));
        const auto pts = regularization_experiment(
            -1.0, r0s, [&](double r0) { return tuned_well_strength(-1.0, r0, theta_star); });
        for (const auto& p : pts) CHECK(mod_pi_distance(theta_of(p), theta_star) < 0.05);
    }
}

TEST_CASE("well strength covers both well and core") {
    bool well = false, core = false;
    for (int j = 0; j < 12; ++j) {
        const double r0 = 1e-2 * std::pow(0.8, j);
        const double a = tuned_well_strength(-1.0, r0, 1.0);
        well = well || a > 0.0;
        core = core || a < 0.0;
        CHECK(a < kPi * kPi);
    }
    CHECK(well);
    CHECK(core);
}

TEST_CASE("regularization errors") {
    CHECK_THROWS_AS(regularization_experiment(0.1, {1e-2}, {}, 1.0, 4), DegenerateInput);
    CHECK_THROWS_AS(regularization_experiment(0.1, {-1e-2}), DegenerateInput);
    CHECK_THROWS_AS(regularization_experiment(2.0, {1e-2}), ArgumentError);
    CHECK_THROWS_AS(tuned_well_strength(0.1, 1e-2, 0.5), ArgumentError);
}
