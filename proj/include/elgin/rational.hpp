#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace elgin {

using Rat = mpq_class;
using Int = mpz_class;

// two-integer construction with canonicalization (mpq_class(p,q) does not reduce)
inline Rat rat_frac(long p, long q) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline Rat rat_from_double_exact(double v) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), v);  // every finite double is rational
    return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// "p" when the denominator is 1, otherwise "p/q"
inline std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_str();
}

// Accepts "p", "p/q" or a plain decimal like "0.25" (converted exactly).
inline Rat rat_parse(const std::string& s) {
    if (s.find('/') != std::string::npos || s.find('.') == std::string::npos) {
        Rat r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("rat_parse: bad rational literal: " + s);
        r.canonicalize();
        if (r.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator: " + s);
        return r;
    }
    // decimal: shift the point
    auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    long frac_len = static_cast<long>(s.size() - dot - 1);
    Rat num;
    if (mpq_set_str(num.get_mpq_t(), digits.c_str(), 10) != 0)
        throw std::invalid_argument("rat_parse: bad decimal literal: " + s);
    Rat den(1);
    for (long i = 0; i < frac_len; ++i) den *= 10;
    Rat r = num / den;
    r.canonicalize();
    return r;
}

inline Int int_factorial(long n) {
    if (n < 0) throw std::domain_error("int_factorial: negative argument");
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Int int_binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// binom(e, k) for any integer e (negative allowed), k >= 0
inline Rat rat_binomial_any(long e, long k) {
    if (k < 0) return 0;
    Rat num(1);
    for (long i = 0; i < k; ++i) num *= Rat(e - i);
    return num / Rat(int_factorial(k));
}

// Double factorial of an odd integer, extended to negative odd arguments by
// n!! = (n+2)!!/(n+2):  (-1)!! = 1, (-3)!! = -1, (-5)!! = 1/3, ...
inline Rat odd_double_factorial(long n) {
    if (n % 2 == 0) throw std::domain_error("odd_double_factorial: even argument");
    if (n >= -1) {
        Rat r(1);
        for (long v = n; v >= 3; v -= 2) r *= Rat(v);
        return r;
    }
    long j = (-n - 1) / 2;  // n = -(2j+1)
    Rat r(1);
    for (long v = 2 * j - 1; v >= 3; v -= 2) r *= Rat(v);
    Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
    return sign / r;
}

// magnitude as a double, saturating to +inf instead of overflowing UB-style
inline double rat_mag_approx(const Rat& r) { return std::fabs(r.get_d()); }

}  // namespace elgin
