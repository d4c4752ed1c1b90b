#include "elgin/variance.hpp"

#include <cmath>
#include <stdexcept>

#include "elgin/expected.hpp"
#include "elgin/quadrature.hpp"
#include "elgin/scaled.hpp"
#include "elgin/specfun.hpp"

namespace elgin::variance {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPiQuarterInv = 0.63161877774606470130;  // (2 pi)^{-1/4}

void check_args(long n, double tau) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("variance: N must be an even integer >= 2");
    if (n > 256) throw std::invalid_argument("variance: N capped at 256 (2-D quadrature cost)");
    if (!(tau > 0.0) || tau >= 1.0) throw std::invalid_argument("variance: tau must lie in (0,1)");
}

double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) { return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size()); }

}  // namespace

KernelEval::KernelEval(long n, double tau) : n_(n), tau_(tau) {
    check_args(n, tau);
    half_width_ = 2.0 * std::sqrt(static_cast<double>(n)) + 6.0;
    s2_front_ = std::sqrt(static_cast<double>(n - 1)) / (1.0 + tau);
    inv_sqrt_.resize(n);
    tau_fac_.resize(n);
    for (long k = 0; k < n; ++k) {
        inv_sqrt_[k] = 1.0 / std::sqrt(static_cast<double>(k + 1));
        tau_fac_[k] = tau * std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
    }
    // cumulative table for Phi(x) = int_0^x phi_{N-2}: cell width tied to the
    // local oscillation length ~ 2 pi sqrt(tau/N)
    table_h_ = 2.8 / std::sqrt(static_cast<double>(n));
    table_lo_ = -half_width_;
    long cells = static_cast<long>(std::ceil(2.0 * half_width_ / table_h_)) + 1;
    phi_int_table_.assign(cells + 1, 0.0);
    auto integrand = [this](double u) {
        std::vector<double> p = phi(u);
        return p[n_ - 2];
    };
    for (long c = 0; c < cells; ++c) {
        double a = table_lo_ + c * table_h_;
        double v, err;
        quad::detail::gk21(integrand, a, a + table_h_, &v, &err);
        phi_int_table_[c + 1] = phi_int_table_[c] + v;
    }
    // re-anchor so that Phi(0) = 0
    double at_zero = phi_integral(0.0);
    for (auto& t : phi_int_table_) t -= at_zero;
}

std::vector<double> KernelEval::phi(double x) const {
    std::vector<double> v(n_);
    double g = kTwoPiQuarterInv * std::exp(-x * x / (2.0 * (1.0 + tau_)));
    v[0] = g;
    if (n_ >= 2) v[1] = x * g;
    for (long k = 1; k + 1 < n_; ++k)
        v[k + 1] = x * inv_sqrt_[k] * v[k] - tau_fac_[k] * v[k - 1];
    return v;
}

double KernelEval::phi_integral(double x) const {
    double pos = (x - table_lo_) / table_h_;
    long cell = static_cast<long>(pos);
    if (cell < 0) cell = 0;
    if (cell >= static_cast<long>(phi_int_table_.size()) - 1)
        cell = static_cast<long>(phi_int_table_.size()) - 2;
    double a = table_lo_ + cell * table_h_;
    auto integrand = [this](double u) {
        std::vector<double> p = phi(u);
        return p[n_ - 2];
    };
    double v = 0.0, err = 0.0;
    if (x != a) quad::detail::gk21(integrand, a, x, &v, &err);
    return phi_int_table_[cell] + v;
}

double KernelEval::s1(double x, double y) const {
    std::vector<double> px = phi(x), py = phi(y);
    double acc = 0.0;
    for (long k = 0; k <= n_ - 2; ++k) acc += px[k] * py[k];
    return acc;
}

double KernelEval::s2(double x, double y) const {
    std::vector<double> py = phi(y);
    return s2_front_ * py[n_ - 1] * phi_integral(x);
}

namespace {

// tensor GK21 panel; the integrand fills the whole 21x21 node matrix at once
// so per-axis state (the phi recurrences) is computed 42 times, not 882
template <typename PanelFn>
void gk21_2d(PanelFn& f, double a, double b, double c, double d, double* resk, double* err) {
    double xm = 0.5 * (a + b), xh = 0.5 * (b - a);
    double ym = 0.5 * (c + d), yh = 0.5 * (d - c);
    double xs[21], ys[21], wk[21], wg[21];
    for (int i = 0; i < 10; ++i) {
        xs[2 * i] = xm - xh * quad::kXgk21[i];
        xs[2 * i + 1] = xm + xh * quad::kXgk21[i];
        ys[2 * i] = ym - yh * quad::kXgk21[i];
        ys[2 * i + 1] = ym + yh * quad::kXgk21[i];
        wk[2 * i] = wk[2 * i + 1] = quad::kWgk21[i];
        wg[2 * i] = wg[2 * i + 1] = (i % 2 == 1) ? quad::kWg10[i / 2] : 0.0;
    }
    xs[20] = xm;
    ys[20] = ym;
    wk[20] = quad::kWgk21[10];
    wg[20] = 0.0;
    static thread_local std::vector<double> fmat;
    fmat.assign(441, 0.0);
    f(xs, ys, fmat.data());
    double k2 = 0.0, g2 = 0.0;
    for (int i = 0; i < 21; ++i) {
        double krow = 0.0, grow = 0.0;
        const double* row = fmat.data() + 21 * i;
        for (int j = 0; j < 21; ++j) {
            krow += wk[j] * row[j];
            grow += wg[j] * row[j];
        }
        k2 += wk[i] * krow;
        g2 += wg[i] * grow;
    }
    *resk = k2 * xh * yh;
    *err = std::fabs((k2 - g2) * xh * yh);
}

// (S1(x,y))^2 on a full node matrix, optionally restricted to the even or
// odd Hermite indices of the kernel sum
struct S1SquaredPanel {
    const KernelEval* ker;
    long k0 = 0;    // first index
    long step = 1;  // 1 = all, 2 = one parity class
    std::vector<double> px[21];
    void operator()(const double* xs, const double* ys, double* out) {
        long n = ker->n();
        static thread_local std::vector<double> py[21];
        for (int i = 0; i < 21; ++i) px[i] = ker->phi(xs[i]);
        for (int j = 0; j < 21; ++j) py[j] = ker->phi(ys[j]);
        for (int i = 0; i < 21; ++i) {
            for (int j = 0; j < 21; ++j) {
                const double* a = px[i].data();
                const double* b = py[j].data();
                double acc = 0.0;
                for (long k = k0; k <= n - 2; k += step) acc += a[k] * b[k];
                out[21 * i + j] = acc * acc;
            }
        }
    }
};

template <typename F>
void adapt_2d(F& f, double a, double b, double c, double d, double tol, int depth,
              int max_depth, double* value, double* err_total, bool* converged) {
    double v, e;
    gk21_2d(f, a, b, c, d, &v, &e);
    if (e <= tol || depth >= max_depth) {
        *value += v;
        *err_total += e;
        if (e > tol) *converged = false;
        return;
    }
    double xm = 0.5 * (a + b), ym = 0.5 * (c + d);
    double t4 = 0.25 * tol;
    adapt_2d(f, a, xm, c, ym, t4, depth + 1, max_depth, value, err_total, converged);
    adapt_2d(f, xm, b, c, ym, t4, depth + 1, max_depth, value, err_total, converged);
    adapt_2d(f, a, xm, ym, d, t4, depth + 1, max_depth, value, err_total, converged);
    adapt_2d(f, xm, b, ym, d, t4, depth + 1, max_depth, value, err_total, converged);
}

struct Quad2dResult {
    double value = 0.0;
    double err = 0.0;
    bool converged = true;
};

// Integrate the S1^2 kernel over [-L,L]^2: fixed coarse cells, independent
// adaptive refinement per cell (parallel), deterministic fixed-order reduction.
Quad2dResult integrate_2d(const KernelEval& ker, double half_width, double abs_tol, bool parallel,
                          double cell_size = 2.0, long k0 = 0, long step = 1) {
    long m = static_cast<long>(std::ceil(2.0 * half_width / cell_size));
    double h = 2.0 * half_width / static_cast<double>(m);
    long ncells = m * m;
    std::vector<double> vals(ncells, 0.0), errs(ncells, 0.0);
    std::vector<char> conv(ncells, 1);
    double cell_tol = abs_tol / static_cast<double>(ncells);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long idx = 0; idx < ncells; ++idx) {
        long i = idx / m, j = idx % m;
        double a = -half_width + i * h, c = -half_width + j * h;
        double v = 0.0, e = 0.0;
        bool ok = true;
        S1SquaredPanel panel{&ker, k0, step, {}};
        adapt_2d(panel, a, a + h, c, c + h, cell_tol, 0, 10, &v, &e, &ok);
        vals[idx] = v;
        errs[idx] = e;
        conv[idx] = ok ? 1 : 0;
    }
    Quad2dResult r;
    r.value = pairwise_sum(vals);
    r.err = pairwise_sum(errs);
    r.converged = true;
    for (char c : conv)
        if (!c) r.converged = false;
    // the global budget may still be met even if a cell missed its share
    if (r.err <= abs_tol) r.converged = true;
    return r;
}

}  // namespace

double s1_squared_quadrature(long n, double tau, double abs_tol, bool parallel, KernelPart part) {
    KernelEval ker(n, tau);
    long k0 = (part == KernelPart::odd) ? 1 : 0;
    long step = (part == KernelPart::all) ? 1 : 2;
    auto r = integrate_2d(ker, ker.domain_half_width(), abs_tol, parallel, 2.0, k0, step);
    return r.value / static_cast<double>(n);
}

VarianceResult variance_exact(long n, double tau, bool parallel) {
    check_args(n, tau);
    KernelEval ker(n, tau);
    double e_n = expected::expected_exact(n, tau);
    const double L = ker.domain_half_width();

    auto q1 = integrate_2d(ker, L, 1e-7, parallel);

    // S2 pieces through the separable form S2(x,y) = front phi_{N-1}(y) Phi(x):
    //   2 int S1 S2 = 2 front sum_k [int phi_k Phi][int phi_k phi_{N-1}]
    //   int S2(x,y) S2(y,x) = front^2 [int phi_{N-1} Phi]^2
    const double front = std::sqrt(static_cast<double>(n - 1)) / (1.0 + tau);
    long cells = static_cast<long>(std::ceil(2.0 * L / (2.8 / std::sqrt(static_cast<double>(n)))));
    double h = 2.0 * L / static_cast<double>(cells);
    std::vector<double> i1(n, 0.0), i2(n, 0.0);
    double i3 = 0.0;
    for (long c = 0; c < cells; ++c) {
        double a = -L + c * h;
        double xm = a + 0.5 * h, xh = 0.5 * h;
        for (int q = 0; q < 21; ++q) {
            double node = (q == 20) ? xm
                          : (q % 2 == 0 ? xm - xh * quad::kXgk21[q / 2]
                                        : xm + xh * quad::kXgk21[q / 2]);
            double w = ((q == 20) ? quad::kWgk21[10] : quad::kWgk21[q / 2]) * xh;
            std::vector<double> p = ker.phi(node);
            double big = ker.phi_integral(node);
            double top = p[n - 1];
            for (long k = 0; k <= n - 2; ++k) {
                i1[k] += w * p[k] * big;
                i2[k] += w * p[k] * top;
            }
            i3 += w * top * big;
        }
    }
    double cross = 0.0;
    for (long k = 0; k <= n - 2; ++k) cross += i1[k] * i2[k];
    double q2 = 2.0 * front * cross;
    double q3 = front * front * i3 * i3;

    VarianceResult r;
    double q_total = q1.value + q2 + q3;
    r.e = e_n;
    r.v = 2.0 * e_n - 2.0 * q_total;
    r.ratio = r.v / r.e;
    r.s2_contribution = std::fabs(2.0 * (q2 + q3));
    r.quad_error = q1.err;
    r.converged = q1.converged;
    return r;
}

double r_alpha(double alpha) {
    if (!(alpha > 0.0) || alpha > 50.0) throw std::invalid_argument("r_alpha: need 0 < alpha <= 50");
    double a2 = alpha * alpha;
    double num = specfun::bessel_i_scaled(0, a2) + specfun::bessel_i_scaled(1, a2);
    double den = specfun::bessel_i_scaled(0, 0.5 * a2) + specfun::bessel_i_scaled(1, 0.5 * a2);
    // e^{-alpha^2/2} I(alpha^2) / I(alpha^2/2) written with scaled Bessels
    return 2.0 - 2.0 * num / den;
}

double r_alpha_from_c(double alpha) {
    return 2.0 - 2.0 * expected::c_alpha(std::sqrt(2.0) * alpha) / expected::c_alpha(alpha);
}

namespace {

// regularized 2F1(l-m+1/2, m-l+1/2; c; -tau/(1-tau)) with l >= m via the
// terminating Pfaff image at tau; all summands positive.
// c = 1/2 - l - m (even sum) or 3/2 - l - m (odd sum, with 2m-1 terms).
ScaledReal kernel_f_reg(long l, long m, double tau, bool odd_family) {
    double a = static_cast<double>(l - m) + 0.5;
    double c = (odd_family ? 1.5 : 0.5) - static_cast<double>(l + m);
    long terms = odd_family ? 2 * m - 1 : 2 * m;  // highest s index
    ScaledSum sum;
    ScaledReal term = ScaledReal::one();
    sum.add(term);
    double bprime = odd_family ? (1.0 - 2.0 * m) : (-2.0 * m);
    for (long s = 0; s <= terms - 1; ++s) {
        double ratio = (a + s) * (bprime + s) / ((c + s) * (s + 1.0)) * tau;
        term *= ScaledReal::from_double(ratio);
        sum.add(term);
    }
    // (1-z)^{-a} with z = -tau/(1-tau), i.e. 1-z = 1/(1-tau)
    ScaledReal pfaff{1, a * std::log(1.0 - tau)};
    return sum.value() * pfaff / specfun::log_gamma(c);
}

}  // namespace

std::pair<double, double> kernel_double_sum(long n, double alpha, bool parallel) {
    check_args(n, 1.0 - alpha * alpha / static_cast<double>(n));
    double tau = 1.0 - alpha * alpha / static_cast<double>(n);
    long half = n / 2;
    double log_pref = std::log(0.5 * kPi * (1.0 + tau) / (1.0 - tau) / static_cast<double>(n));

    std::vector<double> rows_even(half, 0.0), rows_odd(half, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long l = 0; l < half; ++l) {
        double acc_e = 0.0, acc_o = 0.0;
        for (long m = 0; m <= l; ++m) {
            double weight = (m == l) ? 1.0 : 2.0;
            ScaledReal fe = kernel_f_reg(l, m, tau, false);
            ScaledReal te = fe * fe /
                            (specfun::log_gamma(2.0 * l + 1.0) * specfun::log_gamma(2.0 * m + 1.0));
            acc_e += weight * te.to_double() * std::exp(log_pref);
            if (l >= 1 && m >= 1) {
                ScaledReal fo = kernel_f_reg(l, m, tau, true);
                ScaledReal to =
                    fo * fo / (specfun::log_gamma(2.0 * l) * specfun::log_gamma(2.0 * m));
                acc_o += weight * to.to_double() * std::exp(log_pref);
            }
        }
        rows_even[l] = acc_e;
        rows_odd[l] = acc_o;
    }
    return {pairwise_sum(rows_even), pairwise_sum(rows_odd)};
}

}  // namespace elgin::variance
