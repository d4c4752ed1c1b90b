#include "elgin/density.hpp"

#include <cmath>
#include <stdexcept>

#include "elgin/expected.hpp"
#include "elgin/quadrature.hpp"
#include "elgin/specfun.hpp"

namespace elgin::density {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

void check_args(long n, double tau) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("density: N must be an even integer >= 2");
    if (!(tau > 0.0) || tau >= 1.0) throw std::invalid_argument("density: tau must lie in (0,1)");
    if (n > 2048) throw std::invalid_argument("density: N capped at 2048");
}

// sum_{k=0}^{N-2} (tau/2)^k/k! H_k(y)^2 in one pass of the renormalized
// recurrence; all terms are nonnegative.
ScaledReal hermite_diag_sum(long n, double tau, double y) {
    ScaledSum sum;
    double prev = 1.0, cur = 2.0 * y, log_scale = 0.0;
    double log_coeff = 0.0;  // log[(tau/2)^k / k!]
    const double log_t2 = std::log(0.5 * tau);
    for (long k = 0; k <= n - 2; ++k) {
        double h = (k == 0) ? 1.0 : cur;
        if (h != 0.0)
            sum.add(ScaledReal{1, log_coeff + 2.0 * (std::log(std::fabs(h)) + log_scale)});
        log_coeff += log_t2 - std::log(static_cast<double>(k + 1));
        if (k == 0) continue;  // cur already holds H_1
        double next = 2.0 * y * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
        double m = std::fabs(cur);
        if (m > 1e280) {
            prev *= 1e-280;
            cur *= 1e-280;
            log_scale += std::log(1e280);
        } else if (m != 0.0 && m < 1e-280) {
            prev *= 1e280;
            cur *= 1e280;
            log_scale -= std::log(1e280);
        }
    }
    return sum.value();
}

}  // namespace

DensityEvaluator::DensityEvaluator(long n, double tau) : n_(n), tau_(tau) {
    check_args(n, tau);
    e_n_ = expected::expected_exact(n, tau);
    herm_scale_ = std::sqrt(static_cast<double>(n) / (2.0 * tau));
}

double DensityEvaluator::rho1(double x) const {
    double y = herm_scale_ * x;
    ScaledReal f = hermite_diag_sum(n_, tau_, y);
    ScaledReal weight{1, -static_cast<double>(n_) * x * x / (1.0 + tau_)};
    double front = std::sqrt(static_cast<double>(n_) / (2.0 * kPi));
    return front * (f * weight).to_double() / e_n_;
}

double DensityEvaluator::rho2(double x) const {
    if (x == 0.0) return 0.0;
    const double n = static_cast<double>(n_);
    ScaledReal h_top = specfun::hermite_scaled(n_ - 1, herm_scale_ * x);
    if (h_top.is_zero()) return 0.0;
    // (1/sqrt(2pi)) (tau/2)^{N-3/2} N / ((1+tau) (N-2)!)
    ScaledReal pref{1, -0.5 * std::log(2.0 * kPi) + (n - 1.5) * std::log(0.5 * tau_) -
                           std::log1p(tau_) + std::log(n) -
                           specfun::log_gamma(n - 1.0).log_mag};
    ScaledReal gauss{1, -n * x * x / (2.0 * (1.0 + tau_))};
    ScaledReal outer = pref * h_top * gauss;
    // error budget 1e-10 on rho2 itself
    ScaledReal tol = ScaledReal::from_double(1e-10 * e_n_) / outer.abs();
    const double scale = herm_scale_;
    const double decay = n / (2.0 * (1.0 + tau_));
    const long n_idx = n_;
    auto f = [scale, decay, n_idx](double u) {
        return specfun::hermite_scaled(n_idx - 2, scale * u) * ScaledReal{1, -decay * u * u};
    };
    auto integral = quad::integrate_scaled(f, 0.0, x, tol, 30);
    return (outer * integral.value).to_double() / e_n_;
}

double DensityEvaluator::rho(double x) const {
    double v = rho1(x) + rho2(x);
    if (v < -1e-6) throw std::logic_error("density: negative value beyond tolerance");
    return v > 0.0 ? v : 0.0;
}

double density_rho1(long n, double tau, double x) { return DensityEvaluator(n, tau).rho1(x); }
double density_rho2(long n, double tau, double x) { return DensityEvaluator(n, tau).rho2(x); }
double density_exact(long n, double tau, double x) { return DensityEvaluator(n, tau).rho(x); }

double density_zero_closed(long n, double tau) {
    check_args(n, tau);
    const double nn = static_cast<double>(n);
    double e_n = expected::expected_exact(n, tau);
    double t2 = tau * tau;
    ScaledReal first{1, -0.5 * std::log1p(-t2)};
    ScaledReal reg = specfun::hyp2f1_regularized({1.0, 0.5 * (nn + 1.0), 0.5 * nn + 1.0, t2});
    ScaledReal second = ScaledReal{1, nn * std::log(tau)} *
                        specfun::log_gamma(0.5 * (nn + 1.0)) * reg *
                        ScaledReal::from_double(1.0 / kSqrtPi);
    double bracket = (first - second).to_double();
    return std::sqrt(nn / (2.0 * kPi)) * bracket / e_n;
}

double density_rho1_integral_rep(long n, double tau, double x) {
    check_args(n, tau);
    DensityEvaluator ev(n, tau);
    double at_zero = ev.rho1(0.0);
    if (x == 0.0) return at_zero;
    const double nn = static_cast<double>(n);
    double e_n = ev.expected_count();
    // sqrt(2/pi) (tau/2)^{N-3/2} N / ((1+tau)(N-2)!)
    ScaledReal pref{1, 0.5 * std::log(2.0 / kPi) + (nn - 1.5) * std::log(0.5 * tau) -
                           std::log1p(tau) + std::log(nn) -
                           specfun::log_gamma(nn - 1.0).log_mag};
    double scale = std::sqrt(nn / (2.0 * tau));
    double decay = nn / (1.0 + tau);
    auto f = [scale, decay, n](double u) {
        return specfun::hermite_scaled(n - 2, scale * u) * specfun::hermite_scaled(n - 1, scale * u) *
               ScaledReal{1, -decay * u * u};
    };
    ScaledReal tol = ScaledReal::from_double(1e-11 * e_n) / pref.abs();
    auto integral = quad::integrate_scaled(f, 0.0, x, tol, 30);
    return at_zero - (pref * integral.value).to_double() / e_n;
}

double density_limit_ah(double alpha, double x) {
    if (!(alpha > 0.0)) throw std::invalid_argument("density: alpha must be > 0");
    if (std::fabs(x) >= 2.0) return 0.0;
    double c = expected::c_alpha(alpha);
    return specfun::erf(0.5 * alpha * std::sqrt(4.0 - x * x)) / (c * 2.0 * alpha * kSqrtPi);
}

double density_semicircle(double x) {
    if (std::fabs(x) >= 2.0) return 0.0;
    return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

double density_uniform_elliptic(double tau, double x) {
    if (!(tau >= 0.0) || tau > 1.0) throw std::invalid_argument("density: tau must lie in [0,1]");
    if (std::fabs(x) > 1.0 + tau) return 0.0;
    return 0.5 / (1.0 + tau);
}

CdResidual cd_residual(long n, double tau, double x) {
    if (n < 2 || n % 2 != 0 || n > 512)
        throw std::invalid_argument("cd_residual: need even N in [2,512]");
    if (!(tau > 0.0) || tau > 1.0) throw std::invalid_argument("cd_residual: tau must lie in (0,1]");
    auto f_sum = [n, tau](double t) { return hermite_diag_sum(n, tau, t); };
    double h = 1e-6 * std::max(1.0, std::fabs(x));
    ScaledReal lhs = (f_sum(x + h) - f_sum(x - h)) * ScaledReal::from_double(0.5 / h);
    ScaledReal t1 = ScaledReal::from_double(4.0 * tau * x / (1.0 + tau)) * f_sum(x);
    ScaledReal c2{1, std::log(4.0) + (static_cast<double>(n) - 1.0) * std::log(0.5 * tau) -
                         std::log1p(tau) - specfun::log_gamma(static_cast<double>(n) - 1.0).log_mag};
    ScaledReal t2 = c2 * specfun::hermite_scaled(n - 2, x) * specfun::hermite_scaled(n - 1, x);
    ScaledReal rhs = t1 - t2;
    return {lhs - rhs, rhs, t1.abs() + t2.abs()};
}

std::vector<double> make_grid(double lo, double hi, int count) {
    if (count < 2 || hi <= lo) throw std::invalid_argument("make_grid: need hi > lo and count >= 2");
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

DensityCurve density_curve_exact(long n, double tau, const std::vector<double>& grid, bool parallel) {
    DensityCurve c;
    c.grid = grid;
    c.values.resize(grid.size());
    c.n = n;
    c.param = tau;
    if (tau == 1.0) {  // kernel forms assume tau < 1; documented fallback
        c.route = "limit";
        for (size_t i = 0; i < grid.size(); ++i) c.values[i] = density_semicircle(grid[i]);
        return c;
    }
    c.route = "exact";
    DensityEvaluator ev(n, tau);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < static_cast<long>(grid.size()); ++i) c.values[i] = ev.rho(grid[i]);
    } else {
        for (size_t i = 0; i < grid.size(); ++i) c.values[i] = ev.rho(grid[i]);
    }
    return c;
}

DensityCurve density_curve_limit(double alpha, const std::vector<double>& grid) {
    DensityCurve c;
    c.grid = grid;
    c.values.resize(grid.size());
    c.n = 0;
    c.param = alpha;
    c.route = "limit";
    for (size_t i = 0; i < grid.size(); ++i) c.values[i] = density_limit_ah(alpha, grid[i]);
    return c;
}

}  // namespace elgin::density
