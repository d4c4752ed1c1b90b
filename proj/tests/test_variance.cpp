#include <cmath>

#include "doctest.h"
#include "elgin/density.hpp"
#include "elgin/expected.hpp"
#include "elgin/montecarlo.hpp"
#include "elgin/quadrature.hpp"
#include "elgin/variance.hpp"

using namespace elgin;
using namespace elgin::variance;

TEST_CASE("r(alpha) limits and dual route") {
    CHECK(r_alpha(1e-3) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(std::fabs(r_alpha(50.0) - (2.0 - std::sqrt(2.0))) < 1e-3);
    for (double a : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        CHECK(std::fabs(r_alpha(a) - r_alpha_from_c(a)) < 1e-12);
        CHECK(r_alpha(a) >= 0.0);
        CHECK(r_alpha(a) < 2.0 - std::sqrt(2.0));
    }
}

TEST_CASE("kernel symmetry and diagonal identity") {
    long n = 16;
    double tau = 0.5;
    KernelEval ker(n, tau);
    for (double x : {0.3, 1.5}) {
        for (double y : {-0.7, 2.2}) {
            CHECK(ker.s1(x, y) == doctest::Approx(ker.s1(y, x)).epsilon(1e-12));
        }
    }
    // S(x,x) = (E/sqrt(N)) rho(x/sqrt(N))
    double e_n = expected::expected_exact(n, tau);
    density::DensityEvaluator rho(n, tau);
    double sqn = std::sqrt(static_cast<double>(n));
    for (double x : {0.0, 0.8, 2.0}) {
        double lhs = ker.s(x, x);
        double rhs = e_n / sqn * rho.rho(x / sqn);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("expected count equals the kernel diagonal integral") {
    long n = 16;
    double tau = 1.0 - 1.0 / 16.0;
    KernelEval ker(n, tau);
    auto r = quad::integrate([&ker](double x) { return ker.s(x, x); }, -ker.domain_half_width(),
                             ker.domain_half_width(), 1e-9);
    CHECK(r.value == doctest::Approx(expected::expected_exact(n, tau)).epsilon(1e-7));
}

TEST_CASE("double sums match the 2-D quadrature at N = 8") {
    long n = 8;
    double alpha = 1.0;
    double tau = 1.0 - alpha * alpha / static_cast<double>(n);
    auto [one, two] = kernel_double_sum(n, alpha);
    double quad_route = s1_squared_quadrature(n, tau, 1e-10);
    CHECK(one + two == doctest::Approx(quad_route).epsilon(1e-6));
}

TEST_CASE("double sums: serial equals parallel") {
    auto a = kernel_double_sum(32, 1.0, true);
    auto b = kernel_double_sum(32, 1.0, false);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
}

TEST_CASE("variance at small N is positive and reproducible") {
    long n = 16;
    double tau = 1.0 - 1.0 / 16.0;
    auto r1 = variance_exact(n, tau, true);
    auto r2 = variance_exact(n, tau, false);
    CHECK(r1.v == r2.v);
    CHECK(r1.v > 0.0);
    CHECK(r1.converged);
    CHECK(r1.ratio == doctest::Approx(r1.v / r1.e).epsilon(1e-15));
    CHECK(r1.e == doctest::Approx(expected::expected_exact(n, tau)).epsilon(1e-13));
}

TEST_CASE("variance against a quick Monte Carlo cross-check") {
    long n = 16;
    double tau = 1.0 - 1.0 / 16.0;
    auto quad_v = variance_exact(n, tau);
    mc::EnsembleSpec spec{n, tau, mc::EntryDist::gaussian, 99};
    auto stats = mc::run_experiment(spec, 4000, {});
    // sampling error of a variance estimate ~ V sqrt(2/n_samples)
    double ci = 4.0 * stats.count_variance * std::sqrt(2.0 / 4000.0);
    CHECK(std::fabs(stats.count_variance - quad_v.v) < ci);
    CHECK(std::fabs(stats.count_mean - quad_v.e) < 4.0 * stats.count_stderr);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(variance_exact(300, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(variance_exact(15, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(variance_exact(16, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(r_alpha(-1.0), std::invalid_argument);
}

TEST_CASE("I_N and II_N separately match their parity-restricted quadratures") {
    // even/odd cross terms vanish by parity, so the two families are
    // independently checkable
    long n = 8;
    double alpha = 1.0;
    double tau = 1.0 - alpha * alpha / static_cast<double>(n);
    auto [one, two] = kernel_double_sum(n, alpha);
    double even_part = s1_squared_quadrature(n, tau, 1e-10, true, KernelPart::even);
    double odd_part = s1_squared_quadrature(n, tau, 1e-10, true, KernelPart::odd);
    CHECK(one == doctest::Approx(even_part).epsilon(1e-6));
    CHECK(two == doctest::Approx(odd_part).epsilon(1e-6));
}

TEST_CASE("kernel double sums trend toward c(sqrt(2) alpha)") {
    double target = expected::c_alpha(std::sqrt(2.0));
    double prev_gap = 1e9;
    for (long n : {64L, 128L, 256L}) {
        auto [one, two] = kernel_double_sum(n, 1.0);
        double gap = std::fabs(one + two - target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.01);
}

TEST_CASE("fixed-tau variance ratio approaches 2 - sqrt(2)") {
    const double target = 2.0 - std::sqrt(2.0);
    double prev_gap = 1e9;
    for (long n : {64L, 128L, 256L}) {
        auto r = variance_exact(n, 0.5);
        CHECK(r.v >= 0.0);
        double gap = std::fabs(r.ratio - target);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.05);
}

TEST_CASE("rank-one kernel part becomes negligible relative to the variance") {
    double prev_rel = 1e9;
    for (long n : {16L, 64L, 256L}) {
        auto r = variance_exact(n, 1.0 - 1.0 / static_cast<double>(n));
        double rel = r.s2_contribution / r.v;
        CHECK(rel < prev_rel);
        prev_rel = rel;
    }
    CHECK(prev_rel < 0.05);
}
