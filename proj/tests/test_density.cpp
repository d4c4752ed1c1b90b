#include <cmath>

#include "doctest.h"
#include "elgin/density.hpp"
#include "elgin/expected.hpp"
#include "elgin/quadrature.hpp"

using namespace elgin;
using namespace elgin::density;

TEST_CASE("density is even in x") {
    DensityEvaluator ev(32, 0.8);
    for (double x : {0.3, 1.1, 1.9}) {
        CHECK(ev.rho(x) == doctest::Approx(ev.rho(-x)).epsilon(1e-12));
        CHECK(ev.rho1(x) == doctest::Approx(ev.rho1(-x)).epsilon(1e-12));
        CHECK(ev.rho2(x) == doctest::Approx(ev.rho2(-x)).epsilon(1e-11));
    }
}

TEST_CASE("value at zero matches the closed hypergeometric form") {
    for (long n : {16L, 64L}) {
        for (double alpha : {1.0, 2.0}) {
            double tau = 1.0 - alpha * alpha / static_cast<double>(n);
            double direct = density_exact(n, tau, 0.0);
            double closed = density_zero_closed(n, tau);
            CHECK(direct == doctest::Approx(closed).epsilon(1e-10));
        }
    }
    // a fixed-tau point as well
    CHECK(density_exact(32, 0.5, 0.0) == doctest::Approx(density_zero_closed(32, 0.5)).epsilon(1e-10));
}

TEST_CASE("density integrates to one") {
    long n = 64;
    double tau = 1.0 - 1.0 / static_cast<double>(n);
    DensityEvaluator ev(n, tau);
    auto r = quad::integrate([&ev](double x) { return ev.rho(x); }, -3.2, 3.2, 1e-8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("limiting density anchors") {
    for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
        CHECK(density_limit_ah(alpha, 2.0) == 0.0);
        CHECK(density_limit_ah(alpha, -2.0) == 0.0);
        CHECK(density_limit_ah(alpha, 2.5) == 0.0);
        double at0 = density_limit_ah(alpha, 0.0);
        double expect = std::erf(alpha) / (expected::c_alpha(alpha) * 2.0 * alpha * 1.7724538509055160273);
        CHECK(at0 == doctest::Approx(expect).epsilon(1e-13));
        auto r = quad::integrate([alpha](double x) { return density_limit_ah(alpha, x); }, -2.0, 2.0, 1e-12);
        CHECK(std::fabs(r.value - 1.0) < 1e-10);
    }
}

TEST_CASE("reference densities") {
    CHECK(density_semicircle(0.0) == doctest::Approx(1.0 / 3.14159265358979323846).epsilon(1e-15));
    CHECK(density_semicircle(2.0) == 0.0);
    CHECK(density_uniform_elliptic(0.5, 0.2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(density_uniform_elliptic(0.5, 1.6) == 0.0);
    // uniform integrates to 1 exactly: width 2(1+tau) times 1/(2(1+tau))
    CHECK(2.0 * (1.0 + 0.5) * density_uniform_elliptic(0.5, 0.0) == 1.0);
}

TEST_CASE("limit density interpolates semicircle and uniform") {
    double sup = 0.0;
    for (double x = -1.9; x <= 1.9001; x += 0.05)
        sup = std::max(sup, std::fabs(density_limit_ah(0.05, x) - density_semicircle(x)));
    CHECK(sup <= 0.01);
    CHECK(std::fabs(density_limit_ah(8.0, 0.0) - 0.25) <= 0.02);
}

TEST_CASE("Christoffel-Darboux residual fits its contract") {
    // N = 2 is the degenerate case: both sides vanish identically, so the
    // residual is compared against the magnitude of the cancelling terms
    auto r2 = cd_residual(2, 0.6, 0.7);
    CHECK(r2.scaled() < 1e-10);
    auto r16 = cd_residual(16, 0.7, 0.3);
    CHECK(r16.relative() <= 1e-4);
    auto big = cd_residual(128, 0.9, 2.5);
    CHECK(big.relative() <= 1e-4);
    // tau = 1 allowed here
    auto sym = cd_residual(16, 1.0, 0.5);
    CHECK(sym.relative() <= 1e-4);
    // oddness makes the scaled residual magnitudes coincide
    auto plus = cd_residual(16, 0.7, 0.9);
    auto minus = cd_residual(16, 0.7, -0.9);
    CHECK(plus.lhs_minus_rhs.log_mag == doctest::Approx(minus.lhs_minus_rhs.log_mag).epsilon(1e-10));
}

TEST_CASE("rho1 integral representation agrees with the direct sum") {
    long n = 64;
    double tau = 1.0 - 1.0 / static_cast<double>(n);
    for (double x : {0.4, 1.0, 1.5}) {
        double direct = density_rho1(n, tau, x);
        double via_int = density_rho1_integral_rep(n, tau, x);
        CHECK(std::fabs(direct - via_int) < 1e-8);
    }
}

TEST_CASE("rho2 amplitude shrinks as N grows") {
    // rho2 oscillates with an N-dependent phase, so the comparison is on the
    // grid supremum, not point by point
    auto grid = make_grid(-1.5, 1.5, 31);
    for (double alpha : {1.0, 2.0}) {
        DensityEvaluator small_ev(64, 1.0 - alpha * alpha / 64.0);
        DensityEvaluator large_ev(256, 1.0 - alpha * alpha / 256.0);
        double sup_small = 0.0, sup_large = 0.0;
        for (double x : grid) {
            sup_small = std::max(sup_small, std::fabs(small_ev.rho2(x)));
            sup_large = std::max(sup_large, std::fabs(large_ev.rho2(x)));
        }
        CHECK(sup_large < sup_small);
        CHECK(sup_large < 0.05);
    }
}

TEST_CASE("curves: parallel equals serial, tau = 1 falls back to the semicircle") {
    auto grid = make_grid(-2.5, 2.5, 41);
    auto a = density_curve_exact(32, 0.9, grid, true);
    auto b = density_curve_exact(32, 0.9, grid, false);
    REQUIRE(a.values.size() == b.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.route == "exact");

    auto sym = density_curve_exact(32, 1.0, grid);
    CHECK(sym.route == "limit");
    for (size_t i = 0; i < grid.size(); ++i) CHECK(sym.values[i] == density_semicircle(grid[i]));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(density_exact(15, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(density_exact(16, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(density_exact(16, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 0.0, 10), std::invalid_argument);
}

TEST_CASE("density normalization holds off the almost-Hermitian regime too") {
    for (double tau : {0.5, 1.0 - 4.0 / 64.0}) {
        DensityEvaluator ev(64, tau);
        auto r = quad::integrate([&ev](double x) { return ev.rho(x); }, -3.2, 3.2, 1e-8);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    }
}
