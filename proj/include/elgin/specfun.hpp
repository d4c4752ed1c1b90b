#pragma once

#include <stdexcept>

#include "elgin/scaled.hpp"

namespace elgin::specfun {

// Raised when no evaluation path (terminating series, direct series,
// Pfaff/Euler image) reaches the requested hypergeometric argument.
struct NoConvergentPath : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double erf(double x);
double erfc(double x);

// Gamma(x); throws std::domain_error at the poles x = 0, -1, -2, ...
// Half-integer and integer arguments go through the exact
// double-factorial product rather than the Lanczos fit.
double gamma(double x);
ScaledReal log_gamma(double x);  // sign of Gamma plus ln|Gamma|

// Modified Bessel I_nu for nu in {0,1}, x >= 0.  Power series up to
// x = 20, large-argument asymptotic beyond.
double bessel_i(int nu, double x);
double bessel_i_scaled(int nu, double x);  // e^{-x} I_nu(x), safe for huge x

struct Hyp2F1Args {
    double a, b, c, z;
};

// Gauss hypergeometric on the argument families used here: terminating
// series for non-positive-integer a or b, direct series for |z| < 1,
// Pfaff transform for z < 0.  Throws NoConvergentPath otherwise.
double hyp2f1(const Hyp2F1Args& args);
ScaledReal hyp2f1_scaled(const Hyp2F1Args& args);

// 2F1 / Gamma(c), evaluated in scaled space so c ~ N/2 poses no problem.
ScaledReal hyp2f1_regularized(const Hyp2F1Args& args);

// H_k(x) by the three-term recurrence, renormalized on the fly.
ScaledReal hermite_scaled(long k, double x);

}  // namespace elgin::specfun
