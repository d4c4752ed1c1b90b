#pragma once

#include <string>
#include <utility>
#include <vector>

#include "elgin/rational.hpp"

namespace elgin::expected {

// Regime parameterization: fixed tau in [0,1), or alpha > 0 with
// tau_N = 1 - alpha^2/N.
struct RegimeParam {
    enum class Mode { tau, alpha };
    Mode mode = Mode::tau;
    double tau = 0.0;    // tau mode
    double alpha = 0.0;  // alpha mode
    long n = 0;          // alpha mode

    static RegimeParam from_tau(double tau);
    static RegimeParam from_alpha(double alpha, long n);
    double tau_value() const;            // tau, or 1 - alpha^2/N
    double alpha_value(long n = 0) const;  // alpha, or sqrt(n (1 - tau))
};

// Expected count of real eigenvalues, exact at finite N.
// The hypergeometric-sum route is the returned value; the exact-rational
// residue route is the independent cross-check.
double expected_exact(long n, double tau);
double expected_exact_hyp(long n, double tau);
double expected_exact_residue(long n, const Rat& tau);
double expected_exact_residue(long n, double tau);

// d_s(alpha): series definition (exact-rational truncation) for any s,
// and the Bessel closed forms for s in {0,1}.
double d_series(int s, double alpha);
double d_coeff(int s, double alpha);

// Leading-order count rate c(alpha): Bessel form and erf-integral form.
double c_alpha(double alpha);
double c_alpha_integral(double alpha);
double c0_alpha(double alpha);

// c_l(alpha): the q-coefficient double sum (exact-rational accumulation),
// and the d-recombination route used as a cross-check.
double c_l_alpha(int l, double alpha);
double c_l_alpha_recombined(int l, double alpha);

// a_l(tau): k-series over p-hat rows (numeric truncation), and the exact
// polynomial route P_l(tau/(tau-1)).
double a_l_tau(int l, double tau);
Rat a_l_tau_exact(int l, const Rat& tau);
std::vector<Rat> p_poly_coeffs(int l);  // coefficients of P_l

struct ExpansionResult {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    int order = 0;
    bool regime_warning = false;  // elliptic expansion applied at N(1-tau) = O(1)
};

// N c(alpha) + c_0 + 1/2 + sum_{l<m} c_l/N^l
ExpansionResult expected_asymptotic_ah(double alpha, long n, int m);

// sqrt((2/pi)(1+tau)/(1-tau) N) [1 + sum_{l<m} a_l/N^l] + 1/2
ExpansionResult expected_asymptotic_elliptic(double tau, long n, int m);

}  // namespace elgin::expected
