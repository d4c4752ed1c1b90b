#include <cmath>

#include "doctest.h"
#include "elgin/expected.hpp"
#include "elgin/series.hpp"
#include "elgin/specfun.hpp"

using namespace elgin;
using namespace elgin::expected;

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
}

TEST_CASE("exact count anchors at tau = 0") {
    CHECK(expected_exact(2, 0.0) == doctest::Approx(kSqrt2).epsilon(1e-14));
    CHECK(expected_exact(4, 0.0) == doctest::Approx(11.0 * kSqrt2 / 8.0).epsilon(1e-14));
    // partial sums of sqrt(2) sum (4k-1)!!/(4k)!!
    double sum = 1.0, term = 1.0;
    for (long k = 1; k < 8; ++k) {
        term *= (4.0 * k - 1.0) / (4.0 * k);
        term *= (4.0 * k - 3.0) / (4.0 * k - 2.0);
        sum += term;
        CHECK(expected_exact(2 * (k + 1), 0.0) == doctest::Approx(kSqrt2 * sum).epsilon(1e-13));
    }
}

TEST_CASE("N = 2 exact count is sqrt(2(1+tau))") {
    for (double tau : {0.25, 0.5, 0.75}) {
        CHECK(expected_exact(2, tau) == doctest::Approx(std::sqrt(2.0 * (1.0 + tau))).epsilon(1e-13));
        CHECK(expected_exact_residue(2, tau) == doctest::Approx(std::sqrt(2.0 * (1.0 + tau))).epsilon(1e-13));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(expected_exact(3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(expected_exact(64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(expected_exact(64, -0.1), std::invalid_argument);
}

TEST_CASE("hypergeometric route vs residue route") {
    for (long n : {4L, 10L, 20L, 64L}) {
        for (int t = 0; t <= 9; t += 3) {
            Rat tau = rat_frac(t, 10);
            double hyp = expected_exact_hyp(n, t / 10.0);
            // the double tau is not exactly t/10; evaluate the residue route at
            // the same binary64 value
            double res = expected_exact_residue(n, rat_from_double_exact(t / 10.0));
            CHECK(hyp == doctest::Approx(res).epsilon(1e-11));
            (void)tau;
        }
    }
    // the N = 20, x = -1 cross-route anchor (x = -1 means tau = 1/2)
    double hyp = expected_exact_hyp(20, 0.5);
    double res = expected_exact_residue(20, Rat(1, 2));
    CHECK(hyp == doctest::Approx(res).epsilon(1e-10));
}

TEST_CASE("monotone in tau at large N") {
    long n = 512;
    double prev = 0.0;
    for (int t = 0; t <= 9; ++t) {
        double e = expected_exact(n, t / 10.0);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("d coefficients") {
    // d_0 = c/2
    for (double a : {0.3, 1.0, 2.5}) {
        CHECK(d_coeff(0, a) == doctest::Approx(0.5 * c_alpha(a)).epsilon(1e-14));
        CHECK(d_series(0, a) == doctest::Approx(d_coeff(0, a)).epsilon(1e-13));
    }
    // d_1 -> 0 as alpha -> 0 (the closed form has I0 -> 1, I1 -> 0)
    CHECK(d_coeff(1, 1e-4) == doctest::Approx(0.0).epsilon(1e-7));
    // dual route at alpha = 1.5
    CHECK(d_series(1, 1.5) == doctest::Approx(d_coeff(1, 1.5)).epsilon(1e-12));
}

TEST_CASE("c(alpha): Bessel and integral forms") {
    for (double a : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        CHECK(std::fabs(c_alpha(a) - c_alpha_integral(a)) < 1e-10);
    }
    CHECK(c_alpha(1e-4) == doctest::Approx(1.0).epsilon(1e-7));
    // alpha c(alpha) sqrt(pi)/2 -> 1
    double a = 50.0;
    CHECK(a * c_alpha(a) * 1.7724538509055160273 / 2.0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("c_l via generating function vs Bessel-polynomial closed form (l = 1, 2)") {
    for (double a : {0.5, 1.0, 2.0}) {
        double b = 0.5 * a * a;
        double i0 = specfun::bessel_i_scaled(0, b), i1 = specfun::bessel_i_scaled(1, b);
        double a2 = a * a, a4 = a2 * a2, a6 = a4 * a2, a8 = a4 * a4, a10 = a8 * a2;
        double p10 = -a4 * (3.0 * a2 - 8.0) / 48.0;
        double p11 = a2 * (3.0 * a4 - 8.0 * a2 - 2.0) / 48.0;
        double c1_closed = p10 * i0 + p11 * i1;
        CHECK(c_l_alpha(1, a) == doctest::Approx(c1_closed).epsilon(1e-11));
        double p20 = a4 * (a6 - 8.0 * a4 + 11.0 * a2 + 1.0) / 96.0;
        double p21 = -a2 * (a8 - 7.0 * a6 + 6.0 * a4 + 3.0 * a2 + 4.0) / 96.0;
        double c2_closed = p20 * i0 + p21 * i1;
        CHECK(c_l_alpha(2, a) == doctest::Approx(c2_closed).epsilon(1e-11));
        (void)a10;
        // d-recombination route
        CHECK(c_l_alpha_recombined(1, a) == doctest::Approx(c_l_alpha(1, a)).epsilon(1e-11));
        CHECK(c_l_alpha_recombined(2, a) == doctest::Approx(c_l_alpha(2, a)).epsilon(1e-10));
    }
}

TEST_CASE("almost-Hermitian expansion: residual shrinks like N^{-m}") {
    const double alpha = 1.0;
    const int m = 3;
    double r_prev = 0.0;
    std::vector<double> residuals;
    for (long n : {128L, 256L, 512L}) {
        double exact = expected_exact_residue(n, rat_from_double_exact(1.0 - alpha * alpha / n));
        auto exp_r = expected_asymptotic_ah(alpha, n, m);
        residuals.push_back(std::fabs(exact - exp_r.value));
    }
    // successive ratios should be ~2^{-m} = 1/8, within a factor of 2
    for (size_t i = 1; i < residuals.size(); ++i) {
        double ratio = residuals[i] / residuals[i - 1];
        CHECK(ratio < 2.0 * std::pow(2.0, -m));
        CHECK(ratio > 0.5 * std::pow(2.0, -m));
    }
    (void)r_prev;
}

TEST_CASE("leading term alone stays within O(1)") {
    const double alpha = 1.0;
    for (long n : {64L, 128L, 256L, 512L, 1024L}) {
        double exact = expected_exact(n, 1.0 - alpha * alpha / n);
        double lead = n * c_alpha(alpha);
        CHECK(std::fabs(exact - lead) < 1.0);
    }
}

TEST_CASE("c0 term matches its closed form inside the expansion") {
    auto r = expected_asymptotic_ah(2.0, 400, 2);
    REQUIRE(r.terms.size() >= 3);
    CHECK(r.terms[1].first == "c0+1/2");
    CHECK(r.terms[1].second == doctest::Approx(c0_alpha(2.0) + 0.5).epsilon(1e-14));
    double b = 2.0;  // alpha = 2: c0 = -1/2 e^{-2}(I0(2) + 4 I1(2))
    double expect = -0.5 * (specfun::bessel_i_scaled(0, b) + 4.0 * specfun::bessel_i_scaled(1, b));
    CHECK(c0_alpha(2.0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("elliptic expansion coefficients at tau = 0") {
    CHECK(a_l_tau_exact(1, Rat(0)) == Rat(-3, 8));
    CHECK(a_l_tau_exact(2, Rat(0)) == Rat(-3, 128));
    CHECK(a_l_tau_exact(3, Rat(0)) == Rat(27, 1024));
    CHECK(a_l_tau_exact(4, Rat(0)) == Rat(499, 32768));
}

TEST_CASE("a_l closed forms at several tau") {
    auto a1 = [](double t) { return (t - 3.0) / (8.0 * (1.0 - t)); };
    auto a2 = [](double t) { return (5.0 * t * t - 14.0 * t - 3.0) / (128.0 * std::pow(1.0 - t, 2)); };
    auto a3 = [](double t) {
        return (-17.0 * t * t * t + 73.0 * t * t - 203.0 * t + 27.0) / (1024.0 * std::pow(1.0 - t, 3));
    };
    auto a4 = [](double t) {
        return (-541.0 * std::pow(t, 4) + 2684.0 * t * t * t - 6846.0 * t * t - 4196.0 * t + 499.0) /
               (32768.0 * std::pow(1.0 - t, 4));
    };
    for (double t : {0.0, 0.25, 0.5}) {
        Rat tr = rat_from_double_exact(t);
        CHECK(rat_to_double(a_l_tau_exact(1, tr)) == doctest::Approx(a1(t)).epsilon(1e-13));
        CHECK(rat_to_double(a_l_tau_exact(2, tr)) == doctest::Approx(a2(t)).epsilon(1e-13));
        CHECK(rat_to_double(a_l_tau_exact(3, tr)) == doctest::Approx(a3(t)).epsilon(1e-13));
        CHECK(rat_to_double(a_l_tau_exact(4, tr)) == doctest::Approx(a4(t)).epsilon(1e-13));
        // numeric series route agrees with the exact polynomial route
        for (int l = 1; l <= 4; ++l)
            CHECK(a_l_tau(l, t) == doctest::Approx(rat_to_double(a_l_tau_exact(l, tr))).epsilon(1e-12));
    }
}

TEST_CASE("elliptic expansion residual shrinks with the order") {
    // N^{1/2 - m} scaling: ratios across N in {100, 200, 400} at fixed m
    const double tau = 0.3;
    const int m = 3;
    std::vector<double> residuals;
    for (long n : {100L, 200L, 400L}) {
        double exact = expected_exact(n, tau);
        auto e = expected_asymptotic_elliptic(tau, n, m);
        CHECK_FALSE(e.regime_warning);
        residuals.push_back(std::fabs(exact - e.value));
    }
    double expect_ratio = std::pow(2.0, 0.5 - m);
    for (size_t i = 1; i < residuals.size(); ++i) {
        double ratio = residuals[i] / residuals[i - 1];
        CHECK(ratio < 2.5 * expect_ratio);
        CHECK(ratio > 0.4 * expect_ratio);
    }
}

TEST_CASE("elliptic expansion flags the almost-Hermitian regime") {
    auto e = expected_asymptotic_elliptic(1.0 - 1.0 / 256.0, 256, 2);
    CHECK(e.regime_warning);
}

TEST_CASE("regime parameter conversions") {
    auto p = RegimeParam::from_alpha(2.0, 100);
    CHECK(p.tau_value() == doctest::Approx(1.0 - 4.0 / 100.0).epsilon(1e-15));
    auto q = RegimeParam::from_tau(0.96);
    CHECK(q.alpha_value(100) == doctest::Approx(std::sqrt(100.0 * 0.04)).epsilon(1e-12));
    CHECK_THROWS_AS(RegimeParam::from_alpha(20.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(RegimeParam::from_tau(1.0), std::invalid_argument);
}

namespace {

// Exact Gaussian elimination over the rationals.
std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        REQUIRE(piv < n);
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

// Power-series coefficients (in x = alpha^2/2) of the correction term c_l,
// straight from the q-coefficient double sum; exact rationals.
std::vector<Rat> c_l_series_coeffs(int l, int j_max) {
    std::vector<Rat> gamma(j_max + 1, Rat(0));
    series::QRowSeq rows(l + 1);
    std::vector<std::vector<Rat>> qrow;
    for (int m = 0; m <= j_max; ++m) qrow.push_back(rows.next());
    Rat two_pow_k(1);
    for (int j = l + 1; j <= j_max; ++j) {
        Rat acc(0);
        for (int k = 0; k <= std::min(l + 1, j); ++k) {
            long m = j - k;
            Rat dfm = odd_double_factorial(2 * m - 1) / Rat(int_factorial(m));
            Rat dfk = odd_double_factorial(2 * k - 3);
            Rat two_k(1);
            for (int i = 0; i < k; ++i) two_k *= 2;
            acc += qrow[m][l + 1 - k] * dfk / (two_k * Rat(int_factorial(k))) * dfm;
        }
        acc /= Rat(int_factorial(j - l));
        if ((j - l) % 2 == 1) acc = -acc;
        gamma[j] = acc;
    }
    return gamma;
}

}  // namespace

TEST_CASE("Bessel-polynomial form of c_l is exact, rationally (l = 1, 2)") {
    // Write c_l's series as P0(x) A(x) + P1(x) B(x) where A, B are the series
    // of e^{-x} I0(x), e^{-x} I1(x); solve for the polynomial coefficients
    // exactly and compare with the known closed forms.
    for (int l : {1, 2}) {
        int deg = 2 * l + 1;           // polynomial degree in x
        int unknowns = 2 * (deg + 1);  // u_0..u_deg, v_0..v_deg
        int verify_rows = unknowns + 20;
        auto gamma = c_l_series_coeffs(l, verify_rows);
        auto coef_a = [](long k) {  // e^{-x} I0 series
            Rat r = odd_double_factorial(2 * k - 1) / (Rat(int_factorial(k)) * Rat(int_factorial(k)));
            return (k % 2 == 0) ? r : -r;
        };
        auto coef_b = [](long k) {  // e^{-x} I1 series
            if (k == 0) return Rat(0);
            Rat r = odd_double_factorial(2 * k - 1) /
                    (Rat(int_factorial(k - 1)) * Rat(int_factorial(k + 1)));
            return (k % 2 == 0) ? -r : r;
        };
        auto row_entry = [&](int j, int i) {
            // column i < deg+1: u_i; otherwise v_{i-deg-1}
            if (i <= deg) return (j - i >= 0) ? coef_a(j - i) : Rat(0);
            int ii = i - deg - 1;
            return (j - ii >= 0) ? coef_b(j - ii) : Rat(0);
        };
        std::vector<std::vector<Rat>> mat(unknowns, std::vector<Rat>(unknowns));
        std::vector<Rat> rhs(unknowns);
        for (int j = 0; j < unknowns; ++j) {
            for (int i = 0; i < unknowns; ++i) mat[j][i] = row_entry(j, i);
            rhs[j] = gamma[j];
        }
        auto w = solve_rational(mat, rhs);
        // every further series coefficient must match exactly
        for (int j = unknowns; j <= verify_rows; ++j) {
            Rat acc(0);
            for (int i = 0; i < unknowns; ++i) acc += row_entry(j, i) * w[i];
            CHECK(acc == gamma[j]);
        }
        // and the polynomials are the known closed forms (in x = alpha^2/2)
        std::vector<Rat> u_expect, v_expect;
        if (l == 1) {
            u_expect = {Rat(0), Rat(0), rat_frac(2, 3), rat_frac(-1, 2)};
            v_expect = {Rat(0), rat_frac(-1, 12), rat_frac(-2, 3), rat_frac(1, 2)};
        } else {
            u_expect = {Rat(0), Rat(0), rat_frac(1, 24), rat_frac(11, 12), rat_frac(-4, 3), rat_frac(1, 3)};
            v_expect = {Rat(0), rat_frac(-1, 12), rat_frac(-1, 8), rat_frac(-1, 2), rat_frac(7, 6), rat_frac(-1, 3)};
        }
        for (int i = 0; i <= deg; ++i) {
            CHECK(w[i] == u_expect[i]);
            CHECK(w[deg + 1 + i] == v_expect[i]);
        }
    }
}

TEST_CASE("tau = 0 count equals its single-hypergeometric resummation") {
    // E_{N,0} = 1/2 + sqrt(2/pi) Gamma(N+1/2)/(N-1)! 2F1(1,-1/2;N;1/2)
    for (long n : {2L, 8L, 32L, 128L}) {
        double nn = static_cast<double>(n);
        auto front = specfun::log_gamma(nn + 0.5) / specfun::log_gamma(nn);
        double f = specfun::hyp2f1({1.0, -0.5, nn, 0.5});
        double resummed = 0.5 + std::sqrt(2.0 / 3.14159265358979323846) * front.to_double() * f;
        CHECK(expected_exact(n, 0.0) == doctest::Approx(resummed).epsilon(1e-13));
    }
}
