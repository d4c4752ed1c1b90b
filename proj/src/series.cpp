#include "elgin/series.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace elgin::series {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

RationalSeries RationalSeries::exponential(const Rat& a, int order) {
    RationalSeries s(order);
    Rat term(1);
    s[0] = term;
    for (int j = 1; j <= order; ++j) {
        term *= a;
        term /= j;
        s[j] = term;
    }
    return s;
}

RationalSeries operator+(const RationalSeries& f, const RationalSeries& g) {
    int ord = std::min(f.order(), g.order());
    RationalSeries r(ord);
    for (int j = 0; j <= ord; ++j) r[j] = f[j] + g[j];
    return r;
}

RationalSeries operator-(const RationalSeries& f, const RationalSeries& g) {
    int ord = std::min(f.order(), g.order());
    RationalSeries r(ord);
    for (int j = 0; j <= ord; ++j) r[j] = f[j] - g[j];
    return r;
}

RationalSeries operator*(const RationalSeries& f, const RationalSeries& g) {
    int ord = std::min(f.order(), g.order());
    RationalSeries r(ord);
    for (int i = 0; i <= ord; ++i) {
        if (f[i] == 0) continue;
        for (int j = 0; i + j <= ord; ++j) {
            if (g[j] == 0) continue;
            r[i + j] += f[i] * g[j];
        }
    }
    return r;
}

RationalSeries RationalSeries::reciprocal() const {
    if (c_[0] == 0) throw std::domain_error("RationalSeries::reciprocal: zero constant term");
    int ord = order();
    RationalSeries r(ord);
    r[0] = 1 / c_[0];
    for (int n = 1; n <= ord; ++n) {
        Rat acc(0);
        for (int j = 1; j <= n; ++j) acc += c_[j] * r[n - j];
        r[n] = -acc / c_[0];
    }
    return r;
}

RationalSeries RationalSeries::pow_int(long e) const {
    if (e < 0) return reciprocal().pow_int(-e);
    RationalSeries base = *this;
    RationalSeries acc = RationalSeries::constant(Rat(1), order());
    while (e > 0) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

RationalSeries RationalSeries::pow_frac(const Rat& e) const {
    if (c_[0] != 1) throw std::domain_error("RationalSeries::pow_frac: constant term must be 1");
    // m g_m = sum_{j=1}^m ((e+1) j - m) f_j g_{m-j}
    int ord = order();
    RationalSeries g(ord);
    g[0] = 1;
    for (int m = 1; m <= ord; ++m) {
        Rat acc(0);
        for (int j = 1; j <= m; ++j) {
            if (c_[j] == 0) continue;
            acc += ((e + 1) * j - m) * c_[j] * g[m - j];
        }
        g[m] = acc / m;
    }
    return g;
}

RationalSeries RationalSeries::compose(const RationalSeries& g) const {
    if (g[0] != 0) throw std::domain_error("RationalSeries::compose: inner constant term must be 0");
    int ord = std::min(order(), g.order());
    // Horner over the truncated coefficients
    RationalSeries acc = RationalSeries::constant(c_[order()], ord);
    for (int j = order() - 1; j >= 0; --j) {
        acc = acc * g;
        acc[0] += c_[j];
    }
    return acc;
}

namespace {

// (e^t - 1)/t: coefficient of t^j is 1/(j+1)!
RationalSeries series_em1_over_t(int order) {
    RationalSeries t(order);
    Rat f(1);
    for (int j = 0; j <= order; ++j) {
        f /= (j + 1);
        t[j] = f;
    }
    return t;
}

// 2/(e^t + 1) = reciprocal of (e^t + 1)/2
RationalSeries series_two_over_ep1(int order) {
    RationalSeries h(order);
    h[0] = 1;
    for (int j = 1; j <= order; ++j) h[j] = Rat(1) / (2 * Rat(int_factorial(j)));
    return h.reciprocal();
}

// t e^t/(e^t-1)
RationalSeries series_t_et_over_em1(int order) {
    return RationalSeries::exponential(Rat(1), order) * series_em1_over_t(order).reciprocal();
}

std::vector<Rat> row_of(const RationalSeries& s) {
    std::vector<Rat> out(s.order() + 1);
    for (int j = 0; j <= s.order(); ++j) out[j] = s[j];
    return out;
}

}  // namespace

std::vector<Rat> gen_q(long k, int s_max) {
    if (s_max < 0 || s_max > 4000) throw std::invalid_argument("gen_q: s_max out of range");
    RationalSeries t = series_t_et_over_em1(s_max);
    return row_of(t.pow_int(k + 2) * series_two_over_ep1(s_max));
}

std::vector<Rat> gen_p_hat(long k, int l_max) {
    if (l_max < 0 || l_max > 4000) throw std::invalid_argument("gen_p_hat: l_max out of range");
    RationalSeries w = series_em1_over_t(l_max).pow_frac(Rat(-3, 2)) * series_two_over_ep1(l_max);
    return row_of(w * RationalSeries::exponential(Rat(k + 2), l_max));
}

std::vector<Rat> gen_p(long k, int s_max) {
    if (s_max < 0 || s_max > 4000) throw std::invalid_argument("gen_p: s_max out of range");
    RationalSeries a = series_em1_over_t(s_max);
    RationalSeries w = a.pow_int(k) * a.pow_frac(Rat(-3, 2));
    return row_of(w * RationalSeries::exponential(Rat(2), s_max) * series_two_over_ep1(s_max));
}

QRowSeq::QRowSeq(int s_max)
    : cur_(series_t_et_over_em1(s_max).pow_int(2) * series_two_over_ep1(s_max)),
      step_(series_t_et_over_em1(s_max)) {}

std::vector<Rat> QRowSeq::next() {
    auto out = row_of(cur_);
    cur_ *= step_;
    return out;
}

PHatRowSeq::PHatRowSeq(int l_max)
    : cur_(series_em1_over_t(l_max).pow_frac(Rat(-3, 2)) * series_two_over_ep1(l_max) *
           RationalSeries::exponential(Rat(2), l_max)),
      step_(RationalSeries::exponential(Rat(1), l_max)) {}

std::vector<Rat> PHatRowSeq::next() {
    auto out = row_of(cur_);
    cur_ *= step_;
    return out;
}

namespace {

void check_even_n(long n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("invalid-N: need an even N >= 2");
}

// coefficients of (1+u)^{-3/2}: (-1)^j (2j+1)!!/(2^j j!)
std::vector<Rat> binom_m32(long order) {
    std::vector<Rat> a(order + 1);
    a[0] = 1;
    for (long j = 1; j <= order; ++j) a[j] = a[j - 1] * Rat(-(2 * j + 1), 2 * j);
    return a;
}

// coefficients of (1 - u y)^{-1/2}: (2j-1)!!/(2^j j!) y^j
std::vector<Rat> binom_m12_scaled(long order, const Rat& y) {
    std::vector<Rat> b(order + 1);
    b[0] = 1;
    for (long j = 1; j <= order; ++j) b[j] = b[j - 1] * y * Rat(2 * j - 1, 2 * j);
    return b;
}

// prefix sums of the product series a*b: p_n = sum_{i+j<=n} a_i b_j
std::vector<Rat> convolved_prefix(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    long ord = static_cast<long>(a.size()) - 1;
    std::vector<Rat> conv(ord + 1, Rat(0));
    for (long i = 0; i <= ord; ++i)
        for (long j = 0; i + j <= ord; ++j) conv[i + j] += a[i] * b[j];
    for (long nidx = 1; nidx <= ord; ++nidx) conv[nidx] += conv[nidx - 1];
    return conv;
}

}  // namespace

std::vector<double> residue_g_all(long n_max, const Rat& x) {
    check_even_n(n_max);
    if (x > 0) throw std::invalid_argument("residue_g: x must be <= 0");
    long ord = n_max - 2;
    Rat y = x / (1 - x);
    auto prefix = convolved_prefix(binom_m32(ord), binom_m12_scaled(ord, y));
    double front = kSqrtPi / std::sqrt(rat_to_double(Rat(1) - x));
    std::vector<double> out(n_max / 2);
    for (long n = 2; n <= n_max; n += 2) out[n / 2 - 1] = front * rat_to_double(prefix[n - 2]);
    return out;
}

double residue_g(long n, const Rat& x) { return residue_g_all(n, x).back(); }

Rat residue_a(long n, long k) {
    check_even_n(n);
    if (k < 0 || k > n - 2) throw std::out_of_range("residue_a: need 0 <= k <= N-2");
    // coefficient of u^{N-k-2} in (1+u)^{-k-2} (1-u)^{-1}, i.e. the prefix sum
    // of the binomial coefficients of (1+u)^{-k-2}
    long ord = n - k - 2;
    Rat coeff(0), binom(1);
    for (long j = 0; j <= ord; ++j) {
        if (j > 0) binom *= rat_frac(-(k + 1 + j), j);
        coeff += binom;
    }
    Rat scale = Rat(2) / Rat(Int(n)) ;
    for (long i = 0; i < k; ++i) scale /= n;
    return scale * coeff;
}

Rat residue_a_closed(long n, long k) {
    check_even_n(n);
    if (k < 0 || k > n - 2) throw std::out_of_range("residue_a_closed: need 0 <= k <= N-2");
    auto q = gen_q(k, static_cast<int>(k));
    Rat sum(0), npow(1);
    for (long s = 0; s <= k; ++s) {
        Rat term = q[s] / Rat(int_factorial(k + 1 - s)) / npow;
        if (s % 2 == 1) term = -term;
        sum += term;
        npow *= n;
    }
    return (k % 2 == 0) ? sum : -sum;
}

namespace {

// Res_{z,w=1} of z^{-m-2n-1} w^{-k+m-1+2n} (z-1)^{-(N-1-m-2n)} (w-1)^{-(N-1-k+m)}
// / (1 - (z-1)^2 (w-1)^2), inner variable first.
Rat double_residue(long n, long k, long nn, long m) {
    long zc = n - 2 - m - 2 * nn;    // wanted power of (z-1)
    long wc = n - 2 - k + m;         // wanted power of (w-1)
    if (zc < 0 || wc < 0) return 0;
    Rat sum(0);
    for (long j = 0; 2 * j <= zc && 2 * j <= wc; ++j) {
        Rat bz = rat_binomial_any(-m - 2 * nn - 1, zc - 2 * j);
        Rat bw = rat_binomial_any(-k + m - 1 + 2 * nn, wc - 2 * j);
        sum += bz * bw;
    }
    return sum;
}

Rat pow_rat(const Rat& base, long e) {
    Rat r(1);
    if (e >= 0)
        for (long i = 0; i < e; ++i) r *= base;
    else
        for (long i = 0; i < -e; ++i) r /= base;
    return r;
}

}  // namespace

Rat residue_a_n(long n, long k, long nn) {
    check_even_n(n);
    if (k < 0 || nn < 0) throw std::out_of_range("residue_a_n: need k, n >= 0");
    Rat sum(0);
    for (long m = 0; m <= k; ++m) {
        Rat fac = odd_double_factorial(2 * nn + 2 * m - 1) /
                  (Rat(int_factorial(m)) * Rat(int_factorial(k - m)) *
                   odd_double_factorial(2 * nn - 2 * k + 2 * m - 1));
        if ((k - m) % 2 == 1) fac = -fac;
        sum += fac * double_residue(n, k, nn, m);
    }
    Rat front = pow_rat(Rat(1, 2), k - 1) / pow_rat(Rat(Int(n)), k + 1);
    if (nn % 2 == 1) front = -front;
    return front * sum;
}

Rat residue_a_n_closed(long n, long k, long nn) {
    check_even_n(n);
    if (k < 0 || nn < 0) throw std::out_of_range("residue_a_n_closed: need k, n >= 0");
    Rat sum(0);
    for (long m = 0; m <= k; ++m) {
        if (k - m - 2 * nn < 0) continue;
        long nprime = (n - m) / 2 - nn - 1;
        Rat inner(0);
        for (long l = 0; l <= nprime; ++l) {
            long base = n - 2 - 2 * l;
            if (base - k + m < 0) continue;
            Int prod(1);
            for (long i = 0; i < m + 2 * nn; ++i) prod *= (base - i);
            for (long i = 0; i < k - m - 2 * nn; ++i) prod *= (base - 2 * nn - i);
            inner += Rat(prod);
        }
        Rat fac = odd_double_factorial(2 * nn + 2 * m - 1) *
                  odd_double_factorial(2 * k - 2 * m - 1 - 2 * nn) /
                  (Rat(int_factorial(m)) * Rat(int_factorial(k - m)) *
                   Rat(int_factorial(m + 2 * nn)) * Rat(int_factorial(k - m - 2 * nn)));
        sum += fac * inner;
    }
    Rat front = pow_rat(Rat(1, 2), k - 1) / pow_rat(Rat(Int(n)), k + 1);
    if (k % 2 == 1) front = -front;
    return front * sum;
}

Rat a_limit(long k, long nn) {
    if (k < 0 || nn < 0) throw std::out_of_range("a_limit: need k, n >= 0");
    Rat sum(0);
    for (long m = 0; m <= k; ++m) {
        if (k - m - 2 * nn < 0) continue;
        sum += odd_double_factorial(2 * nn + 2 * m - 1) *
               odd_double_factorial(2 * k - 2 * m - 1 - 2 * nn) /
               (Rat(int_factorial(m)) * Rat(int_factorial(k - m)) *
                Rat(int_factorial(m + 2 * nn)) * Rat(int_factorial(k - m - 2 * nn)));
    }
    Rat front = pow_rat(Rat(1, 2), k) / Rat(k + 1);
    if (k % 2 == 1) front = -front;
    return front * sum;
}

Rat a_closed(long k) {
    Rat r = odd_double_factorial(2 * k - 1) / (Rat(int_factorial(k)) * Rat(int_factorial(k + 1)));
    return (k % 2 == 0) ? r : -r;
}

std::vector<Rat> a_coefficients(long k_max) {
    std::vector<Rat> out;
    out.reserve(k_max + 1);
    for (long k = 0; k <= k_max; ++k) {
        Rat acc = a_limit(k, 0);
        for (long nn = 1; nn <= k / 2; ++nn) acc += 2 * a_limit(k, nn);
        out.push_back(acc);
    }
    return out;
}

bool comb_identity(long k) {
    if (k < 0 || k > 100000) throw std::out_of_range("comb_identity: k out of range");
    Rat rhs(0);
    for (long m = 0; m <= k; ++m) {
        Rat inner(0);
        for (long nn = -(k / 2); nn <= k / 2; ++nn) {
            if (m + 2 * nn < 0 || k - m - 2 * nn < 0) continue;
            inner += odd_double_factorial(2 * nn + 2 * m - 1) *
                     odd_double_factorial(2 * k - 2 * m - 2 * nn - 1) /
                     (Rat(int_factorial(m + 2 * nn)) * Rat(int_factorial(k - m - 2 * nn)));
        }
        rhs += Rat(int_binomial(k, m)) * inner;
    }
    return rhs == Rat(int_binomial(2 * k, k));
}

std::string CoefficientTable::to_json_string() const {
    nlohmann::json j;
    j["kind"] = kind;
    if (index >= 0) j["k"] = index;
    if (!rats.empty()) {
        std::vector<std::string> vals;
        vals.reserve(rats.size());
        for (const auto& r : rats) vals.push_back(rat_to_string(r));
        j["values"] = vals;
    } else {
        j["values"] = reals;
    }
    return j.dump();
}

}  // namespace elgin::series
