#include "elgin/expected.hpp"

#include <cmath>
#include <stdexcept>

#include "elgin/quadrature.hpp"
#include "elgin/series.hpp"
#include "elgin/specfun.hpp"

namespace elgin::expected {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

void check_even(long n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("expected: N must be an even integer >= 2");
}

void check_tau(double tau) {
    if (!(tau >= 0.0) || tau >= 1.0)
        throw std::invalid_argument("expected: tau must lie in [0,1); tau = 1 is the symmetric case with N real eigenvalues");
}

// log2 magnitude of a rational, robust against double overflow
double rat_log2(const Rat& r) {
    if (r == 0) return -1e18;
    double ln = static_cast<double>(mpz_sizeinbase(r.get_num().get_mpz_t(), 2));
    double ld = static_cast<double>(mpz_sizeinbase(r.get_den().get_mpz_t(), 2));
    return ln - ld;
}

Rat pow2_rat(long e) {
    Rat r(1);
    for (long i = 0; i < e; ++i) r *= 2;
    return r;
}

// (2k)!! = 2^k k!
Rat even_double_factorial(long k) { return pow2_rat(k) * Rat(int_factorial(k)); }

}  // namespace

RegimeParam RegimeParam::from_tau(double tau) {
    check_tau(tau);
    RegimeParam p;
    p.mode = Mode::tau;
    p.tau = tau;
    return p;
}

RegimeParam RegimeParam::from_alpha(double alpha, long n) {
    if (!(alpha > 0.0)) throw std::invalid_argument("expected: alpha must be > 0");
    check_even(n);
    if (alpha * alpha >= static_cast<double>(n))
        throw std::invalid_argument("expected: alpha^2 must be < N so tau_N stays in (0,1)");
    RegimeParam p;
    p.mode = Mode::alpha;
    p.alpha = alpha;
    p.n = n;
    return p;
}

double RegimeParam::tau_value() const {
    if (mode == Mode::tau) return tau;
    return 1.0 - alpha * alpha / static_cast<double>(n);
}

double RegimeParam::alpha_value(long n_for_tau) const {
    if (mode == Mode::alpha) return alpha;
    if (n_for_tau <= 0) throw std::invalid_argument("RegimeParam: converting tau to alpha needs N");
    return std::sqrt(static_cast<double>(n_for_tau) * (1.0 - tau));
}

double expected_exact_hyp(long n, double tau) {
    check_even(n);
    check_tau(tau);
    // sum_k Gamma(2k+1/2)/(2k)! * 2F1(1/2,1/2;-2k+1/2;-tau/(1-tau)); the 2F1
    // evaluated through its Pfaff image at tau, where it terminates.
    double sum = 0.0, comp = 0.0;  // Kahan
    double w = kSqrtPi;            // Gamma(2k+1/2)/(2k)!
    double sq1mt = std::sqrt(1.0 - tau);
    for (long k = 0; 2 * k < n; ++k) {
        double t = 1.0, f = 1.0;
        double two_k = 2.0 * static_cast<double>(k);
        for (long s = 0; s < 2 * k; ++s) {
            t *= (0.5 + s) * (-two_k + s) / ((-two_k + 0.5 + s) * (s + 1.0)) * tau;
            f += t;
            if (t < 1e-19 * f * (1.0 - tau)) break;
        }
        double term = w * sq1mt * f;
        double y = term - comp;
        double u = sum + y;
        comp = (u - sum) - y;
        sum = u;
        w *= (two_k + 0.5) * (two_k + 1.5) / ((two_k + 1.0) * (two_k + 2.0));
    }
    return std::sqrt(2.0 / kPi * (1.0 + tau) / (1.0 - tau)) * sum;
}

double expected_exact_residue(long n, const Rat& tau) {
    check_even(n);
    if (tau < 0 || tau >= 1) throw std::invalid_argument("expected: tau must lie in [0,1)");
    Rat x = -tau / (1 - tau);
    double g = series::residue_g(n, x);
    double t = rat_to_double(tau);
    return std::sqrt(2.0 / kPi * (1.0 + t) / (1.0 - t)) * g;
}

double expected_exact_residue(long n, double tau) {
    return expected_exact_residue(n, rat_from_double_exact(tau));
}

double expected_exact(long n, double tau) { return expected_exact_hyp(n, tau); }

double d_series(int s, double alpha) {
    if (s < 0) throw std::invalid_argument("d_series: s must be >= 0");
    if (!(alpha > 0.0) || alpha > 50.0) throw std::invalid_argument("d_series: need 0 < alpha <= 50");
    Rat x = rat_from_double_exact(0.5 * alpha * alpha);
    series::QRowSeq rows(s);
    Rat acc(0), xp(1), dfact(1);  // dfact = (2k-1)!!/k!
    double peak = 2.0 * alpha * alpha + 8.0;
    int quiet = 0;
    for (long k = 0;; ++k) {
        auto row = rows.next();
        if (k >= s) {
            Rat term = row[s] * dfact * xp / Rat(int_factorial(k + 1 - s));
            if (k % 2 == 1) term = -term;
            acc += term;
            if (static_cast<double>(k) > peak) {
                if (rat_log2(term) < rat_log2(acc) - 80.0) {
                    if (++quiet >= 3) break;
                } else {
                    quiet = 0;
                }
            }
        }
        xp *= x;
        dfact *= Rat(2 * (k + 1) - 1, k + 1);
        if (k > 200000) throw std::runtime_error("d_series: no convergence");
    }
    Rat half(1, 2);
    Rat out = acc * half;
    if (s % 2 == 1) out = -out;
    return rat_to_double(out);
}

double c_alpha(double alpha) {
    double b = 0.5 * alpha * alpha;
    return specfun::bessel_i_scaled(0, b) + specfun::bessel_i_scaled(1, b);
}

double c0_alpha(double alpha) {
    double b = 0.5 * alpha * alpha;
    return -0.5 * (specfun::bessel_i_scaled(0, b) + alpha * alpha * specfun::bessel_i_scaled(1, b));
}

double d_coeff(int s, double alpha) {
    double b = 0.5 * alpha * alpha;
    double i0 = specfun::bessel_i_scaled(0, b), i1 = specfun::bessel_i_scaled(1, b);
    switch (s) {
        case 0:
            return 0.5 * (i0 + i1);
        case 1:
            return 0.25 + 0.125 * ((alpha * alpha - 2.0) * i0 - alpha * alpha * i1);
        default:
            return d_series(s, alpha);  // no closed form carried beyond s = 1
    }
}

double c_alpha_integral(double alpha) {
    auto f = [alpha](double s) { return specfun::erf(alpha * std::sqrt(1.0 - s * s)); };
    auto r = quad::integrate(f, 0.0, 1.0, 1e-12);
    return 2.0 / (alpha * kSqrtPi) * r.value;
}

double c_l_alpha(int l, double alpha) {
    if (l < 1 || l > 8) throw std::invalid_argument("c_l_alpha: need 1 <= l <= 8");
    if (!(alpha > 0.0) || alpha > 50.0) throw std::invalid_argument("c_l_alpha: need 0 < alpha <= 50");
    Rat x = rat_from_double_exact(0.5 * alpha * alpha);
    std::vector<Rat> xk(l + 2);
    xk[0] = 1;
    for (int k = 1; k <= l + 1; ++k) xk[k] = xk[k - 1] * x;

    series::QRowSeq rows(l + 1);
    Rat acc(0), xm(1), dfm(1);  // dfm = (2m-1)!!/m!
    double peak = 2.0 * alpha * alpha + 8.0;
    int quiet = 0;
    for (long m = 0;; ++m) {
        auto row = rows.next();
        double row_peak = -1e18;
        for (int k = 0; k <= l + 1; ++k) {
            long s = l + 1 - k;
            if (m < s) continue;
            Rat term = row[s] * dfm * xm * xk[k] * odd_double_factorial(2 * k - 3) /
                       (even_double_factorial(k) * Rat(int_factorial(m - l + k)));
            if ((m - l + k) % 2 == 1) term = -term;
            acc += term;
            row_peak = std::max(row_peak, rat_log2(term));
        }
        if (static_cast<double>(m) > peak && m > l + 2) {
            if (row_peak < rat_log2(acc) - 80.0) {
                if (++quiet >= 3) break;
            } else {
                quiet = 0;
            }
        }
        xm *= x;
        dfm *= Rat(2 * (m + 1) - 1, m + 1);
        if (m > 200000) throw std::runtime_error("c_l_alpha: no convergence");
    }
    return rat_to_double(acc);
}

double c_l_alpha_recombined(int l, double alpha) {
    double acc = 2.0 * d_series(l + 1, alpha);
    double half = 0.5 * alpha;
    double df = 1.0;  // (2k-1)!!
    double fact = 1.0;
    double p = half;  // (alpha/2)^{2k+1}
    for (int k = 0; k <= l; ++k) {
        if (k > 0) {
            df *= 2 * k - 1;
            fact *= k;
            p *= half * half;
        }
        acc -= alpha * df / (fact * (k + 1.0)) * p * d_series(l - k, alpha);
    }
    return acc;
}

double a_l_tau(int l, double tau) {
    if (l < 1) throw std::invalid_argument("a_l_tau: need l >= 1");
    check_tau(tau);
    series::PHatRowSeq rows(l);
    double sum = 0.0, w = 1.0;  // w = (2k-1)!!/(2^k k!) tau^k
    int quiet = 0;
    for (long k = 0;; ++k) {
        auto row = rows.next();
        double term = w * rat_to_double(row[l]);
        sum += term;
        if (k > l + 4 && std::fabs(term) < 1e-18 * std::fabs(sum)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
        w *= tau * (2.0 * k + 1.0) / (2.0 * (k + 1.0));
        if (k > 100000) throw std::runtime_error("a_l_tau: no convergence");
    }
    double front = rat_to_double(odd_double_factorial(2 * l - 3)) / std::pow(2.0, l);
    return -std::sqrt(1.0 - tau) * front * sum;
}

std::vector<Rat> p_poly_coeffs(int l) {
    if (l < 1) throw std::invalid_argument("p_poly_coeffs: need l >= 1");
    std::vector<Rat> coeffs(l + 1);
    Rat front = odd_double_factorial(2 * l - 3) / pow2_rat(l);
    Rat df(1);  // (2k-1)!!
    for (int k = 0; k <= l; ++k) {
        if (k > 0) df *= (2 * k - 1);
        Rat c = front * df / even_double_factorial(k) * series::gen_p(k, l - k)[l - k];
        if (k % 2 == 0) c = -c;  // (-1)^{k+1}
        coeffs[k] = c;
    }
    return coeffs;
}

Rat a_l_tau_exact(int l, const Rat& tau) {
    if (tau >= 1 || tau < 0) throw std::invalid_argument("a_l_tau_exact: tau in [0,1)");
    Rat x = tau / (tau - 1);
    auto coeffs = p_poly_coeffs(l);
    Rat acc(0), xp(1);
    for (int k = 0; k <= l; ++k) {
        acc += coeffs[k] * xp;
        xp *= x;
    }
    return acc;
}

ExpansionResult expected_asymptotic_ah(double alpha, long n, int m) {
    RegimeParam::from_alpha(alpha, n);  // validation
    if (m < 2 || m > 8) throw std::invalid_argument("expected_asymptotic_ah: need 2 <= m <= 8");
    ExpansionResult r;
    r.order = m;
    double nc = static_cast<double>(n) * c_alpha(alpha);
    r.terms.emplace_back("N*c(alpha)", nc);
    r.terms.emplace_back("c0+1/2", c0_alpha(alpha) + 0.5);
    double npow = static_cast<double>(n);
    for (int l = 1; l <= m - 1; ++l) {
        r.terms.emplace_back("c_" + std::to_string(l) + "/N^" + std::to_string(l),
                             c_l_alpha(l, alpha) / npow);
        npow *= static_cast<double>(n);
    }
    for (auto& [label, v] : r.terms) r.value += v;
    return r;
}

ExpansionResult expected_asymptotic_elliptic(double tau, long n, int m) {
    check_tau(tau);
    check_even(n);
    if (m < 1 || m > 5) throw std::invalid_argument("expected_asymptotic_elliptic: need 1 <= m <= 5");
    ExpansionResult r;
    r.order = m;
    r.regime_warning = static_cast<double>(n) * (1.0 - tau) < 25.0;
    double pref = std::sqrt(2.0 / kPi * (1.0 + tau) / (1.0 - tau) * static_cast<double>(n));
    r.terms.emplace_back("sqrt((2/pi)(1+tau)/(1-tau)N)", pref);
    double npow = static_cast<double>(n);
    for (int l = 1; l <= m - 1; ++l) {
        r.terms.emplace_back("a_" + std::to_string(l) + "/N^" + std::to_string(l),
                             pref * a_l_tau(l, tau) / npow);
        npow *= static_cast<double>(n);
    }
    r.terms.emplace_back("1/2", 0.5);
    for (auto& [label, v] : r.terms) r.value += v;
    return r;
}

}  // namespace elgin::expected
