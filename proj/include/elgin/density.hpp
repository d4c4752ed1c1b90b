#pragma once

#include <string>
#include <vector>

#include "elgin/scaled.hpp"

namespace elgin::density {

// Density of real eigenvalues at finite N (support scaled to ~[-2,2]).
// rho = rho1 + rho2; rho1 is the Hermite diagonal sum, rho2 carries the
// one-dimensional integral term.
double density_exact(long n, double tau, double x);
double density_rho1(long n, double tau, double x);
double density_rho2(long n, double tau, double x);

// Value at x = 0 by the closed hypergeometric form; independent of the
// kernel-sum route.
double density_zero_closed(long n, double tau);

// rho1 via its integral representation (rho1(0) minus a Hermite-pair
// integral); cross-check of density_rho1.
double density_rho1_integral_rep(long n, double tau, double x);

// Limiting densities.
double density_limit_ah(double alpha, double x);  // erf profile on [-2,2]
double density_semicircle(double x);
double density_uniform_elliptic(double tau, double x);

// Christoffel-Darboux identity residual: F'(x) vs the closed-form right side,
// with F' by central finite difference.  Values can exceed double range, so
// both sides stay scaled.
struct CdResidual {
    ScaledReal lhs_minus_rhs{};
    ScaledReal rhs{};
    ScaledReal scale{};  // |term1| + |term2| of the right side, for the
                         // degenerate points where rhs itself cancels to 0
    double relative() const {
        if (rhs.is_zero()) return lhs_minus_rhs.is_zero() ? 0.0 : 1e300;
        return (lhs_minus_rhs.abs() / rhs.abs()).to_double();
    }
    double scaled() const {
        if (scale.is_zero()) return lhs_minus_rhs.is_zero() ? 0.0 : 1e300;
        return (lhs_minus_rhs.abs() / scale).to_double();
    }
};
CdResidual cd_residual(long n, double tau, double x);

struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;
    long n = 0;
    double param = 0.0;  // tau or alpha, depending on route
    std::string route;   // "exact" or "limit"
};

std::vector<double> make_grid(double lo, double hi, int count);

// Exact finite-N curve; grid points are independent work items (OpenMP when
// parallel).  tau == 1 falls back to the semicircle with route "limit".
DensityCurve density_curve_exact(long n, double tau, const std::vector<double>& grid,
                                 bool parallel = true);
DensityCurve density_curve_limit(double alpha, const std::vector<double>& grid);

// Shared-state evaluator: precomputes E_N once for a whole curve.
class DensityEvaluator {
public:
    DensityEvaluator(long n, double tau);
    double rho(double x) const;
    double rho1(double x) const;
    double rho2(double x) const;
    double expected_count() const { return e_n_; }

private:
    long n_;
    double tau_;
    double e_n_;
    double herm_scale_;  // sqrt(N/(2 tau))
};

}  // namespace elgin::density
