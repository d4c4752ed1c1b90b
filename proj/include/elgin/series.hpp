#pragma once

#include <string>
#include <vector>

#include "elgin/rational.hpp"

namespace elgin::series {

// Truncated formal power series with exact rational coefficients.
// All arithmetic is exact through the truncation order.
class RationalSeries {
public:
    explicit RationalSeries(int order) : c_(order + 1, Rat(0)) {}

    static RationalSeries constant(const Rat& v, int order) {
        RationalSeries s(order);
        s.c_[0] = v;
        return s;
    }

    // coefficients of e^{a t}
    static RationalSeries exponential(const Rat& a, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& operator[](int j) const { return c_[j]; }
    Rat& operator[](int j) { return c_[j]; }

    friend RationalSeries operator+(const RationalSeries& f, const RationalSeries& g);
    friend RationalSeries operator-(const RationalSeries& f, const RationalSeries& g);
    friend RationalSeries operator*(const RationalSeries& f, const RationalSeries& g);
    RationalSeries& operator*=(const RationalSeries& g) { return *this = *this * g; }

    bool operator==(const RationalSeries& g) const { return c_ == g.c_; }

    RationalSeries reciprocal() const;          // needs nonzero constant term
    RationalSeries pow_int(long e) const;       // e < 0 via reciprocal
    RationalSeries pow_frac(const Rat& e) const;  // needs constant term 1
    RationalSeries compose(const RationalSeries& g) const;  // needs g(0) = 0

private:
    std::vector<Rat> c_;
};

// Coefficients q_{k,0..s_max} of (t e^t/(e^t-1))^{k+2} * 2/(e^t+1).
std::vector<Rat> gen_q(long k, int s_max);

// Coefficients of ((e^t-1)/t)^{-3/2} * 2 e^{t(k+2)}/(e^t+1).
std::vector<Rat> gen_p_hat(long k, int l_max);

// Coefficients of ((e^t-1)/t)^{k-3/2} * 2 e^{2t}/(e^t+1).
std::vector<Rat> gen_p(long k, int s_max);

// Iterates the q (or p_hat) rows for k = 0, 1, 2, ... sharing work between
// consecutive rows; used by the coefficient sums that scan thousands of k.
class QRowSeq {
public:
    explicit QRowSeq(int s_max);
    std::vector<Rat> next();  // row for the current k, then advances

private:
    RationalSeries cur_, step_;
};

class PHatRowSeq {
public:
    explicit PHatRowSeq(int l_max);
    std::vector<Rat> next();

private:
    RationalSeries cur_, step_;
};

// sqrt(pi) times the coefficient of (z-1)^{N-2} in the expansion of
// z^{-3/2} (2-z)^{-1} (1-z x)^{-1/2} about z = 1; exact rational throughout,
// irrational prefactors applied once at the end.  Requires N >= 2 even, x <= 0.
double residue_g(long n, const Rat& x);

// Same computation returning the value for every even N <= n_max in one pass;
// entry i holds the result for N = 2(i+1).
std::vector<double> residue_g_all(long n_max, const Rat& x);

// Residue at z = 1 of (2/N^{k+1}) z^{-k-2} (2-z)^{-1} (z-1)^{-(N-k-1)}:
// Laurent-coefficient extraction (exact), and the q-sum closed form.
Rat residue_a(long n, long k);
Rat residue_a_closed(long n, long k);

// Coefficients a_{N,k}^n of the kernel double sum: the double-residue route
// and the single-sum closed form.  Both exact rationals.
Rat residue_a_n(long n, long k, long nn);
Rat residue_a_n_closed(long n, long k, long nn);

// Large-N limit a_k^n, its recombination a_k = a_k^0 + 2 sum_{n>=1} a_k^n,
// and the closed form (-1)^k (2k-1)!!/(k!(k+1)!).
Rat a_limit(long k, long nn);
std::vector<Rat> a_coefficients(long k_max);
Rat a_closed(long k);

// binom(2k,k) = sum_m binom(k,m) sum_n (2n+2m-1)!!(2k-2m-2n-1)!!/((m+2n)!(k-m-2n)!)
bool comb_identity(long k);

struct CoefficientTable {
    std::string kind;            // q, p_hat, p, a_l, c_l, d_s, a_k, a_k_n
    long index = -1;             // row index (k) where applicable
    std::vector<Rat> rats;       // exact values
    std::vector<double> reals;   // closed-form reals (c_l, d_s)
    std::string to_json_string() const;
};

}  // namespace elgin::series
