#include "elgin/specfun.hpp"

#include <cmath>
#include <cstdlib>

namespace elgin::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

bool is_integer(double x) { return x == std::floor(x); }

bool is_nonpos_integer(double x) { return x <= 0.0 && is_integer(x); }

// erf on [0, 2.0] through the positive-term series
//   erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_k (2x^2)^k / (2k+1)!!
double erf_series(double x) {
    double x2 = x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= 2.0 * x2 / (2.0 * k + 1.0);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 2.0 * x / kSqrtPi * std::exp(-x2) * sum;
}

// erfc on [1.75, inf) via the Legendre continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
double erfc_cf(double x) {
    // modified Lentz
    const double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int k = 1; k < 300; ++k) {
        double a = 0.5 * k;
        d = x + a * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x * x) / (kSqrtPi * f);
}

// Lanczos g=7, n=9 fit; ~1e-14 relative on the positive axis.
const double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

ScaledReal log_gamma_lanczos(double x) {
    // x >= 0.5 assumed
    double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    double t = z + 7.5;
    double lg = 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
    return {1, lg};
}

// Product accumulator with power-of-two rescaling; the only rounding is
// one double multiply per factor plus the final log.
struct ScaledProduct {
    double mant = 1.0;
    long exp2 = 0;
    void mul(double f) {
        mant *= f;
        if (mant == 0.0) return;
        int e;
        double m = std::frexp(mant, &e);
        if (e > 512 || e < -512) {
            mant = m;
            exp2 += e;
        }
    }
    ScaledReal value() const {
        if (mant == 0.0) return ScaledReal::zero();
        return {mant > 0.0 ? 1 : -1,
                std::log(std::fabs(mant)) + exp2 * 0.6931471805599453094};
    }
};

// Exact route when 2x is a (not too large) integer: Gamma(n) = (n-1)!,
// Gamma(m + 1/2) = (2m-1)!!/2^m sqrt(pi), extended below 1 through the
// recurrence Gamma(v) = Gamma(v+1)/v.
bool half_integer_log_gamma(double x, ScaledReal* out) {
    double two_x = 2.0 * x;
    if (!is_integer(two_x) || std::fabs(two_x) > 4e5) return false;
    ScaledProduct p;
    double v = x;
    while (v < 1.0) {
        p.mul(1.0 / v);
        v += 1.0;
    }
    while (v > 1.5) {
        v -= 1.0;
        p.mul(v);
    }
    if (v == 1.5) p.mul(0.5 * kSqrtPi);  // Gamma(3/2)
    *out = p.value();
    return true;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return -erf(-x);
    if (x <= 1.75) return erf_series(x);
    if (x > 6.5) return 1.0;  // erfc < 4e-20
    return 1.0 - erfc_cf(x);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x >= 1.75) {
        if (x > 27.0) return 0.0;  // below double underflow of e^{-x^2}
        return erfc_cf(x);
    }
    return 1.0 - erf(x);
}

ScaledReal log_gamma(double x) {
    if (is_nonpos_integer(x)) throw std::domain_error("log_gamma: pole at non-positive integer");
    ScaledReal exact;
    if (half_integer_log_gamma(x, &exact)) return exact;
    if (x >= 0.5) return log_gamma_lanczos(x);
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    double s = std::sin(kPi * x);
    ScaledReal denom = ScaledReal::from_double(s) * log_gamma_lanczos(1.0 - x);
    return ScaledReal{1, std::log(kPi)} / denom;
}

double gamma(double x) { return log_gamma(x).to_double(); }

double bessel_i_scaled(int nu, double x) {
    if (nu != 0 && nu != 1) throw std::invalid_argument("bessel_i: nu must be 0 or 1");
    if (x < 0.0) throw std::domain_error("bessel_i: x must be >= 0");
    if (x <= 20.0) {
        // series sum_k (x/2)^{2k+nu} / (k! (k+nu)!)
        double q = 0.25 * x * x;
        double term = (nu == 0) ? 1.0 : 0.5 * x;
        double sum = term;
        for (int k = 1; k < 400; ++k) {
            term *= q / (static_cast<double>(k) * (k + nu));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return sum * std::exp(-x);
    }
    // large-argument asymptotic, truncated at its smallest term
    double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        double next = term * -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * x * k);
        if (std::fabs(next) >= std::fabs(term)) break;
        term = next;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

double bessel_i(int nu, double x) { return bessel_i_scaled(nu, x) * std::exp(x); }

namespace {

ScaledReal checked_sum(const ScaledSum& sum) {
    ScaledReal v = sum.value();
    ScaledReal bound = sum.magnitude_bound();
    if (!v.is_zero() && bound.log_mag - v.log_mag > 27.6)  // ~1e12 cancellation
        throw NoConvergentPath("hyp2f1: catastrophic cancellation on this path");
    return v;
}

// Terminating Gauss series: b is a non-positive integer, c not a pole
// before termination.  Scaled accumulation; term signs tracked exactly.
ScaledReal hyp2f1_terminating(double a, double b, double c, double z) {
    long nterms = static_cast<long>(-b) + 1;  // s = 0 .. -b
    ScaledSum sum;
    sum.add(ScaledReal::one());
    ScaledReal term = ScaledReal::one();
    for (long s = 0; s + 1 < nterms; ++s) {
        double cs = c + s;
        if (cs == 0.0) throw std::domain_error("hyp2f1: c hits a non-positive integer before termination");
        double ratio = (a + s) * (b + s) / (cs * (s + 1.0));
        term *= ScaledReal::from_double(ratio) * ScaledReal::from_double(z);
        sum.add(term);
    }
    return checked_sum(sum);
}

// Direct Gauss series for |z| < 1.
ScaledReal hyp2f1_direct(double a, double b, double c, double z) {
    if (is_nonpos_integer(c)) throw std::domain_error("hyp2f1: non-terminating series with non-positive integer c");
    ScaledSum sum;
    sum.add(ScaledReal::one());
    ScaledReal term = ScaledReal::one();
    const long cap = 400000;
    for (long s = 0; s < cap; ++s) {
        double ratio = (a + s) * (b + s) / ((c + s) * (s + 1.0)) * z;
        term *= ScaledReal::from_double(ratio);
        sum.add(term);
        if (term.is_zero()) return sum.value();
        ScaledReal rel = term / sum.magnitude_bound();
        if (std::fabs(ratio) < 0.999 && (rel.sign == 0 || rel.log_mag < std::log(1e-17)))
            return checked_sum(sum);
    }
    throw NoConvergentPath("hyp2f1: series did not converge within term budget");
}

}  // namespace

ScaledReal hyp2f1_scaled(const Hyp2F1Args& args) {
    auto [a, b, c, z] = args;
    if (z == 0.0) return ScaledReal::one();

    // prefer a terminating series; swap a<->b freely
    bool a_term = is_nonpos_integer(a), b_term = is_nonpos_integer(b);
    if (a_term || b_term) {
        if (a_term && (!b_term || a > b)) std::swap(a, b);
        return hyp2f1_terminating(a, b, c, z);
    }

    if (std::fabs(z) < 1.0 && z > 0.0) return hyp2f1_direct(a, b, c, z);

    if (z < 0.0) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1));
        // image lies in (0,1).  Prefer a terminating variant, and of the two
        // the shorter sum (fewer terms, no sign-flipping Pochhammer factors).
        double w = z / (z - 1.0);
        bool ca_t = is_nonpos_integer(c - a), cb_t = is_nonpos_integer(c - b);
        if (ca_t || cb_t) {
            if (ca_t && (!cb_t || c - a > c - b))
                return ScaledReal{1, -b * std::log1p(-z)} * hyp2f1_terminating(b, c - a, c, w);
            return ScaledReal{1, -a * std::log1p(-z)} * hyp2f1_terminating(a, c - b, c, w);
        }
        return ScaledReal{1, -a * std::log1p(-z)} * hyp2f1_direct(a, c - b, c, w);
    }

    throw NoConvergentPath("hyp2f1: no convergent path for z >= 1");
}

double hyp2f1(const Hyp2F1Args& args) { return hyp2f1_scaled(args).to_double(); }

ScaledReal hyp2f1_regularized(const Hyp2F1Args& args) {
    // 2F1/Gamma(c).  A non-positive integer c is a removable zero of the
    // regularized function only in terminating cases; we do not need those.
    return hyp2f1_scaled(args) / log_gamma(args.c);
}

ScaledReal hermite_scaled(long k, double x) {
    if (k < 0) throw std::invalid_argument("hermite_scaled: k must be >= 0");
    if (k == 0) return ScaledReal::one();
    double prev = 1.0, cur = 2.0 * x;
    double log_scale = 0.0;
    for (long j = 1; j < k; ++j) {
        double next = 2.0 * x * cur - 2.0 * static_cast<double>(j) * prev;
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
    if (cur == 0.0) return ScaledReal::zero();
    return {cur > 0.0 ? 1 : -1, std::log(std::fabs(cur)) + log_scale};
}

}  // namespace elgin::specfun
