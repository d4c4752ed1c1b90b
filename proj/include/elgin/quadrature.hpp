#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "elgin/scaled.hpp"

namespace elgin::quad {

// 10-point Gauss / 21-point Kronrod pair on (-1,1); positive abscissae only,
// symmetry supplies the rest.  Fullerton's 80-digit values via QUADPACK.
inline constexpr double kXgk21[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double kWgk21[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kWg10[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // accumulated error estimate
    long evals = 0;
    bool converged = true;
};

namespace detail {

template <typename F>
void gk21(const F& f, double a, double b, double* resk, double* err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[21];
    fv[20] = f(c);
    for (int i = 0; i < 10; ++i) {
        fv[2 * i] = f(c - h * kXgk21[i]);
        fv[2 * i + 1] = f(c + h * kXgk21[i]);
    }
    double k = kWgk21[10] * fv[20];
    double g = 0.0;  // the 10-point Gauss rule has no center node
    double resabs = kWgk21[10] * std::fabs(fv[20]);
    for (int i = 0; i < 10; ++i) {
        double s = fv[2 * i] + fv[2 * i + 1];
        k += kWgk21[i] * s;
        resabs += kWgk21[i] * (std::fabs(fv[2 * i]) + std::fabs(fv[2 * i + 1]));
        if (i % 2 == 1) g += kWg10[i / 2] * s;
    }
    // QUADPACK-style sharpened estimate
    double reskh = 0.5 * k;
    double resasc = kWgk21[10] * std::fabs(fv[20] - reskh);
    for (int i = 0; i < 10; ++i)
        resasc += kWgk21[i] * (std::fabs(fv[2 * i] - reskh) + std::fabs(fv[2 * i + 1] - reskh));
    resasc *= h;
    double e = std::fabs((k - g) * h);
    if (resasc != 0.0 && e != 0.0) e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
    *resk = k * h;
    *err = e;
}

struct Panel {
    double a, b, value, err;
    int depth;
    bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod integration to an absolute tolerance: worst panel
// first, global error budget.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double abs_tol, int max_depth = 30,
                     long max_panels = 200000) {
    QuadResult r;
    if (a == b) return r;
    bool flip = a > b;
    if (flip) std::swap(a, b);

    std::priority_queue<detail::Panel> heap;
    detail::Panel p0{a, b, 0.0, 0.0, 0};
    detail::gk21(f, a, b, &p0.value, &p0.err);
    r.evals += 21;
    heap.push(p0);
    double total_err = p0.err;
    long panels = 1;
    while (total_err > abs_tol && panels < max_panels) {
        detail::Panel top = heap.top();
        if (top.depth >= max_depth || top.err == 0.0) break;
        heap.pop();
        double m = 0.5 * (top.a + top.b);
        detail::Panel left{top.a, m, 0.0, 0.0, top.depth + 1};
        detail::Panel right{m, top.b, 0.0, 0.0, top.depth + 1};
        detail::gk21(f, left.a, left.b, &left.value, &left.err);
        detail::gk21(f, right.a, right.b, &right.value, &right.err);
        r.evals += 42;
        total_err += left.err + right.err - top.err;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    double value = 0.0, err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().err;
        heap.pop();
    }
    r.value = flip ? -value : value;
    r.abs_error = err;
    r.converged = err <= abs_tol;
    return r;
}

struct ScaledQuadResult {
    ScaledReal value{};
    ScaledReal abs_error{};
    long evals = 0;
    bool converged = true;
};

namespace detail {

// One GK21 panel of a log-scale integrand: node values are rescaled by the
// largest magnitude among them before the weighted sums.
template <typename F>
void gk21_scaled(const F& f, double a, double b, ScaledReal* resk, ScaledReal* err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    ScaledReal vals[21];
    double xs[21];
    xs[20] = c;
    for (int i = 0; i < 10; ++i) {
        xs[2 * i] = c - h * kXgk21[i];
        xs[2 * i + 1] = c + h * kXgk21[i];
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 21; ++i) {
        vals[i] = f(xs[i]);
        if (vals[i].sign != 0 && vals[i].log_mag > peak) peak = vals[i].log_mag;
    }
    if (peak == -std::numeric_limits<double>::infinity()) {
        *resk = ScaledReal::zero();
        *err = ScaledReal::zero();
        return;
    }
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 10; ++i) {
        double fv = vals[2 * i].sign * std::exp(vals[2 * i].log_mag - peak) +
                    vals[2 * i + 1].sign * std::exp(vals[2 * i + 1].log_mag - peak);
        k += kWgk21[i] * fv;
        if (i % 2 == 1) g += kWg10[i / 2] * fv;
    }
    k += kWgk21[10] * vals[20].sign * std::exp(vals[20].log_mag - peak);
    ScaledReal scale{1, peak + std::log(h)};
    *resk = ScaledReal::from_double(k) * scale;
    *err = ScaledReal::from_double(std::fabs(k - g)) * scale;
}

struct ScaledPanel {
    double a, b;
    ScaledReal value, err;
    int depth;
    bool operator<(const ScaledPanel& o) const { return err.mag_less(o.err); }
};

}  // namespace detail

// Adaptive integration of a ScaledReal-valued integrand; abs_tol is itself a
// scaled magnitude so callers can demand tolerances far outside double range.
template <typename F>
ScaledQuadResult integrate_scaled(const F& f, double a, double b, ScaledReal abs_tol,
                                  int max_depth = 30, long max_panels = 200000) {
    ScaledQuadResult r;
    if (a == b) return r;
    bool flip = a > b;
    if (flip) std::swap(a, b);

    std::priority_queue<detail::ScaledPanel> heap;
    detail::ScaledPanel p0{a, b, {}, {}, 0};
    detail::gk21_scaled(f, a, b, &p0.value, &p0.err);
    r.evals += 21;
    heap.push(p0);
    ScaledReal total_err = p0.err;
    long panels = 1;
    while (abs_tol.mag_less(total_err) && panels < max_panels) {
        detail::ScaledPanel top = heap.top();
        if (top.depth >= max_depth || top.err.is_zero()) break;
        heap.pop();
        double m = 0.5 * (top.a + top.b);
        detail::ScaledPanel left{top.a, m, {}, {}, top.depth + 1};
        detail::ScaledPanel right{m, top.b, {}, {}, top.depth + 1};
        detail::gk21_scaled(f, left.a, left.b, &left.value, &left.err);
        detail::gk21_scaled(f, right.a, right.b, &right.value, &right.err);
        r.evals += 42;
        heap.push(left);
        heap.push(right);
        ++panels;
        // positive magnitudes only; rebuild periodically to stop drift
        if (panels % 256 == 0) {
            std::priority_queue<detail::ScaledPanel> copy = heap;
            ScaledSum s;
            while (!copy.empty()) {
                s.add(copy.top().err.abs());
                copy.pop();
            }
            total_err = s.value();
        } else {
            total_err = total_err - top.err + left.err + right.err;
        }
    }
    ScaledSum value, err;
    while (!heap.empty()) {
        value.add(heap.top().value);
        err.add(heap.top().err.abs());
        heap.pop();
    }
    r.value = flip ? -value.value() : value.value();
    r.abs_error = err.value();
    r.converged = !abs_tol.mag_less(r.abs_error);
    return r;
}

}  // namespace elgin::quad
