#pragma once

#include <utility>
#include <vector>

namespace elgin::variance {

// Kernel evaluators in the unscaled variables (support |x| ~ 2 sqrt(N)).
// Internally everything is expressed through the normalized functions
//   phi_k(x) = (2pi)^{-1/4} (tau/2)^{k/2} H_k(x/sqrt(2 tau)) e^{-x^2/(2(1+tau))} / sqrt(k!),
// which obey phi_{k+1} = x phi_k/sqrt(k+1) - tau sqrt(k/(k+1)) phi_{k-1} and
// stay inside double range for N <= 256 on the integration square.
class KernelEval {
public:
    KernelEval(long n, double tau);

    long n() const { return n_; }
    double tau() const { return tau_; }
    double domain_half_width() const { return half_width_; }

    // phi_0 .. phi_{N-1}
    std::vector<double> phi(double x) const;

    // Phi(x) = int_0^x phi_{N-2}(u) du, from a cumulative table plus one
    // partial-cell rule
    double phi_integral(double x) const;

    double s1(double x, double y) const;  // symmetric part
    double s2(double x, double y) const;  // integral (rank-one) part
    double s(double x, double y) const { return s1(x, y) + s2(x, y); }

private:
    long n_;
    double tau_;
    double half_width_;
    double s2_front_;  // sqrt(N-1)/(1+tau)
    std::vector<double> inv_sqrt_;   // 1/sqrt(k+1)
    std::vector<double> tau_fac_;    // tau sqrt(k/(k+1))
    double table_lo_ = 0.0, table_h_ = 0.0;
    std::vector<double> phi_int_table_;  // cumulative integral at cell edges
};

struct VarianceResult {
    double v = 0.0;            // variance of the real-eigenvalue count
    double e = 0.0;            // expected count
    double ratio = 0.0;        // v/e
    double s2_contribution = 0.0;  // |part of the kernel integral carried by S2|
    double quad_error = 0.0;   // achieved absolute error estimate of the 2-D part
    bool converged = true;
};

// V = 2 E - 2 int S(x,y) S(y,x); 2-D adaptive quadrature for the symmetric
// part, separable one-dimensional integrals for the S2 cross terms.
VarianceResult variance_exact(long n, double tau, bool parallel = true);

// Limit ratio of variance to mean: the Bessel form, and the c-ratio form
// r = 2 - 2 c(sqrt(2) alpha)/c(alpha).
double r_alpha(double alpha);
double r_alpha_from_c(double alpha);

// Double hypergeometric sums (I_N, II_N) with I_N + II_N = (1/N) int (S1)^2.
std::pair<double, double> kernel_double_sum(long n, double alpha, bool parallel = true);

// (1/N) int (S1)^2 by 2-D quadrature; the independent route for the sums.
// Restricting to the even or odd Hermite indices isolates I_N or II_N
// (the cross terms vanish by parity).
enum class KernelPart { all, even, odd };
double s1_squared_quadrature(long n, double tau, double abs_tol = 1e-8, bool parallel = true,
                             KernelPart part = KernelPart::all);

}  // namespace elgin::variance
