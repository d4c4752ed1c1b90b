#pragma once

#include <cmath>
#include <limits>

namespace elgin {

// Sign plus log-magnitude representation. Products of Hermite values,
// Gamma factors and Gaussian weights overflow doubles long before the
// quantities they combine into do; carrying (sign, log|v|) keeps every
// intermediate representable.
struct ScaledReal {
    int sign = 0;           // -1, 0, +1
    double log_mag = 0.0;   // ln|v|; meaningless when sign == 0

    ScaledReal() = default;
    ScaledReal(int s, double lm) : sign(s), log_mag(s == 0 ? 0.0 : lm) {}

    static ScaledReal zero() { return {}; }
    static ScaledReal one() { return {1, 0.0}; }

    static ScaledReal from_double(double v) {
        if (v == 0.0) return {};
        return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }

    // Exact for |log_mag| < ~709; overflows to +-inf / 0 beyond, like exp().
    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }

    bool is_zero() const { return sign == 0; }

    ScaledReal abs() const { return {sign == 0 ? 0 : 1, log_mag}; }

    friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag + b.log_mag};
    }

    friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
        if (a.sign == 0) return {};
        return {a.sign * b.sign, a.log_mag - b.log_mag};
    }

    friend ScaledReal operator*(const ScaledReal& a, double v) {
        return a * from_double(v);
    }

    friend ScaledReal operator*(double v, const ScaledReal& a) {
        return a * from_double(v);
    }

    ScaledReal& operator*=(const ScaledReal& b) { return *this = *this * b; }
    ScaledReal& operator*=(double v) { return *this = *this * v; }

    friend ScaledReal operator-(const ScaledReal& a) {
        return {-a.sign, a.log_mag};
    }

    // log-sum-exp with signs; exact cancellation yields zero()
    friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
        if (a.sign == 0) return b;
        if (b.sign == 0) return a;
        const ScaledReal& hi = (a.log_mag >= b.log_mag) ? a : b;
        const ScaledReal& lo = (a.log_mag >= b.log_mag) ? b : a;
        double d = lo.log_mag - hi.log_mag;  // <= 0
        if (a.sign == b.sign)
            return {a.sign, hi.log_mag + std::log1p(std::exp(d))};
        if (d == 0.0) return {};
        double m = -std::expm1(d);  // 1 - exp(d) in (0,1]
        return {hi.sign, hi.log_mag + std::log(m)};
    }

    friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) {
        return a + (-b);
    }

    ScaledReal& operator+=(const ScaledReal& b) { return *this = *this + b; }

    // |a| < |b| as magnitudes
    bool mag_less(const ScaledReal& b) const {
        if (sign == 0) return b.sign != 0;
        if (b.sign == 0) return false;
        return log_mag < b.log_mag;
    }

    ScaledReal pow_int(long e) const {
        if (sign == 0) return e == 0 ? one() : zero();
        int s = (sign < 0 && (e & 1)) ? -1 : 1;
        return {s, log_mag * static_cast<double>(e)};
    }
};

// Incremental sum of scaled values; keeps a running positive/negative split
// so long alternating sums stay well conditioned.
class ScaledSum {
public:
    void add(const ScaledReal& v) {
        if (v.sign == 0) return;
        if (v.sign > 0) pos_ += v.abs(); else neg_ += v.abs();
    }
    ScaledReal value() const { return pos_ - neg_; }
    ScaledReal magnitude_bound() const { return pos_ + neg_; }

private:
    ScaledReal pos_{}, neg_{};
};

}  // namespace elgin
