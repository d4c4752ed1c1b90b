#include "elgin/montecarlo.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "elgin/rng.hpp"
#include "elgin/specfun.hpp"

extern "C" {
void dgees_(const char* jobvs, const char* sort, void* select, const int* n, double* a,
            const int* lda, int* sdim, double* wr, double* wi, double* vs, const int* ldvs,
            double* work, const int* lwork, int* bwork, int* info);
void openblas_set_num_threads(int);
}

namespace elgin::mc {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

double normal_cdf(double x) { return 0.5 * specfun::erfc(-x * 0.70710678118654752440); }

// Correlated pair with the requested marginal and E xi1 xi2 = tau.
//  - gaussian: orthogonal mixing of two independent normals
//  - uniform:  Gaussian copula; for uniform marginals the Pearson correlation
//              of the copula is (6/pi) asin(rho/2), so rho = 2 sin(pi tau/6)
//              hits tau exactly
//  - rademacher: sign coupling, xi2 = xi1 with probability (1+tau)/2
std::pair<double, double> draw_pair(rng::CounterRng& g, EntryDist dist, double tau) {
    switch (dist) {
        case EntryDist::gaussian: {
            auto [g1, g2] = g.next_normal_pair();
            double a = std::sqrt(0.5 * (1.0 + tau)), b = std::sqrt(0.5 * (1.0 - tau));
            return {a * g1 + b * g2, a * g1 - b * g2};
        }
        case EntryDist::uniform: {
            auto [g1, g2] = g.next_normal_pair();
            double rho = 2.0 * std::sin(0.52359877559829887308 * tau);  // pi/6
            double h2 = rho * g1 + std::sqrt(1.0 - rho * rho) * g2;
            double u1 = normal_cdf(g1), u2 = normal_cdf(h2);
            return {kSqrt3 * (2.0 * u1 - 1.0), kSqrt3 * (2.0 * u2 - 1.0)};
        }
        case EntryDist::rademacher: {
            double s1 = g.next_unit() < 0.5 ? -1.0 : 1.0;
            double s2 = (g.next_unit() < 0.5 * (1.0 + tau)) ? s1 : -s1;
            return {s1, s2};
        }
    }
    throw std::logic_error("draw_pair: unreachable");
}

double draw_single(rng::CounterRng& g, EntryDist dist) {
    switch (dist) {
        case EntryDist::gaussian:
            return g.next_normal_pair().first;
        case EntryDist::uniform:
            return kSqrt3 * (2.0 * g.next_unit() - 1.0);
        case EntryDist::rademacher:
            return g.next_unit() < 0.5 ? -1.0 : 1.0;
    }
    throw std::logic_error("draw_single: unreachable");
}

// Simple two-sided diagonal balancing (powers of 2), used only when the QR
// iteration reports no convergence on the raw matrix.
Eigen::MatrixXd balance(const Eigen::MatrixXd& a) {
    Eigen::MatrixXd m = a;
    long n = m.rows();
    bool again = true;
    int sweeps = 0;
    while (again && sweeps++ < 20) {
        again = false;
        for (long i = 0; i < n; ++i) {
            double r = m.row(i).lpNorm<1>() - std::fabs(m(i, i));
            double c = m.col(i).lpNorm<1>() - std::fabs(m(i, i));
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c > r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (f != 1.0) {
                m.col(i) *= f;
                m.row(i) /= f;
                again = true;
            }
        }
    }
    return m;
}

// LAPACK QR driver, eigenvalues only.  The 2x2 block standardization inside
// the QR iteration writes an exact zero imaginary part for every real
// eigenvalue, so the real/complex split stays structural.  Returns false on
// non-convergence instead of throwing so the caller can retry.
bool spectrum_lapack(const Eigen::MatrixXd& m, SpectrumSample* out) {
    static const bool blas_single_thread = [] {
        openblas_set_num_threads(1);  // per-sample work stays deterministic
        return true;
    }();
    (void)blas_single_thread;
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd a = m;  // column-major copy, overwritten by dgees
    std::vector<double> wr(n), wi(n);
    int sdim = 0, info = 0;
    int lwork = -1;
    double wk_query = 0.0;
    dgees_("N", "N", nullptr, &n, a.data(), &n, &sdim, wr.data(), wi.data(), nullptr, &n,
           &wk_query, &lwork, nullptr, &info);
    lwork = static_cast<int>(wk_query);
    std::vector<double> work(static_cast<size_t>(lwork));
    dgees_("N", "N", nullptr, &n, a.data(), &n, &sdim, wr.data(), wi.data(), nullptr, &n,
           work.data(), &lwork, nullptr, &info);
    if (info != 0) return false;
    *out = SpectrumSample{};
    long i = 0;
    while (i < n) {
        if (wi[i] != 0.0) {
            out->complex_pairs.emplace_back(wr[i], std::fabs(wi[i]));
            i += 2;
        } else {
            out->real_eigs.push_back(wr[i]);
            i += 1;
        }
    }
    std::sort(out->real_eigs.begin(), out->real_eigs.end());
    out->real_count = static_cast<long>(out->real_eigs.size());
    return true;
}

SpectrumSample classify_schur(const Eigen::MatrixXd& t, long n) {
    SpectrumSample out;
    long i = 0;
    while (i < n) {
        if (i + 1 < n && t(i + 1, i) != 0.0) {
            double p = t(i, i), q = t(i + 1, i + 1);
            double re = 0.5 * (p + q);
            double det = p * q - t(i, i + 1) * t(i + 1, i);
            double disc = det - re * re;
            // RealSchur leaves 2x2 blocks only for complex pairs
            double im = disc > 0.0 ? std::sqrt(disc) : 0.0;
            out.complex_pairs.emplace_back(re, im);
            i += 2;
        } else {
            out.real_eigs.push_back(t(i, i));
            i += 1;
        }
    }
    std::sort(out.real_eigs.begin(), out.real_eigs.end());
    out.real_count = static_cast<long>(out.real_eigs.size());
    return out;
}

}  // namespace

EntryDist parse_dist(const std::string& name) {
    if (name == "gaussian") return EntryDist::gaussian;
    if (name == "uniform") return EntryDist::uniform;
    if (name == "rademacher") return EntryDist::rademacher;
    throw std::invalid_argument("unknown entry distribution: " + name);
}

std::string dist_name(EntryDist d) {
    switch (d) {
        case EntryDist::gaussian: return "gaussian";
        case EntryDist::uniform: return "uniform";
        case EntryDist::rademacher: return "rademacher";
    }
    return "?";
}

Eigen::MatrixXd sample_matrix(const EnsembleSpec& spec, uint64_t sample_index) {
    if (spec.n < 1) throw std::invalid_argument("sample_matrix: N must be >= 1");
    if (spec.tau < 0.0 || spec.tau > 1.0)
        throw std::invalid_argument("sample_matrix: tau must lie in [0,1]");
    const long n = spec.n;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXd m(n, n);
    uint64_t entry = 0;
    for (long j = 0; j < n; ++j) {
        rng::CounterRng g(spec.seed, sample_index, entry++);
        m(j, j) = scale * draw_single(g, spec.dist);
    }
    for (long j = 0; j < n; ++j) {
        for (long k = j + 1; k < n; ++k) {
            rng::CounterRng g(spec.seed, sample_index, entry++);
            auto [x_jk, x_kj] = draw_pair(g, spec.dist, spec.tau);
            m(j, k) = scale * x_jk;
            m(k, j) = scale * x_kj;
        }
    }
    return m;
}

SpectrumSample spectrum(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("spectrum: square matrix required");
    if (!m.allFinite()) throw std::invalid_argument("spectrum: non-finite entries");
    long n = m.rows();
    if (n == 1) {
        SpectrumSample out;
        out.real_eigs.push_back(m(0, 0));
        out.real_count = 1;
        return out;
    }
    SpectrumSample out;
    if (spectrum_lapack(m, &out)) return out;
    if (spectrum_lapack(balance(m), &out)) return out;  // retry with balancing
    // last resort: Eigen's Francis iteration
    Eigen::RealSchur<Eigen::MatrixXd> schur(n);
    schur.compute(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw std::runtime_error("spectrum: QR iteration did not converge");
    return classify_schur(schur.matrixT(), n);
}

ExperimentStats run_experiment(const EnsembleSpec& spec, long n_samples, const HistogramSpec& hist,
                               bool collect_scatter, bool parallel) {
    if (n_samples < 1) throw std::invalid_argument("run_experiment: n_samples must be >= 1");
    if (hist.bins < 1 || hist.hi <= hist.lo) throw std::invalid_argument("run_experiment: bad histogram spec");
    std::vector<long> counts(n_samples, 0);
    std::vector<std::vector<long>> hists(n_samples);
    std::vector<char> parity(n_samples, 1);
    std::vector<std::pair<double, double>> scatter;

    const double bin_w = (hist.hi - hist.lo) / hist.bins;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long s = 0; s < n_samples; ++s) {
        auto spec_sample = spectrum(sample_matrix(spec, static_cast<uint64_t>(s)));
        counts[s] = spec_sample.real_count;
        parity[s] = ((spec_sample.real_count - spec.n) % 2 == 0) ? 1 : 0;
        std::vector<long> h(hist.bins, 0);
        for (double x : spec_sample.real_eigs) {
            long b = static_cast<long>(std::floor((x - hist.lo) / bin_w));
            if (b < 0) b = 0;
            if (b >= hist.bins) b = hist.bins - 1;
            ++h[b];
        }
        hists[s] = std::move(h);
        if (collect_scatter && s == 0) {
            auto pairs = spec_sample.complex_pairs;
#pragma omp critical
            scatter = std::move(pairs);
        }
    }

    ExperimentStats out;
    out.n_samples = n_samples;
    out.hist = hist;
    out.hist_counts.assign(hist.bins, 0);
    double mean = 0.0;
    for (long s = 0; s < n_samples; ++s) {
        mean += static_cast<double>(counts[s]);
        for (int b = 0; b < hist.bins; ++b) out.hist_counts[b] += hists[s][b];
        if (!parity[s]) out.parity_ok = false;
    }
    mean /= static_cast<double>(n_samples);
    double var = 0.0;
    for (long s = 0; s < n_samples; ++s) {
        double d = static_cast<double>(counts[s]) - mean;
        var += d * d;
    }
    var = (n_samples > 1) ? var / static_cast<double>(n_samples - 1) : 0.0;
    out.count_mean = mean;
    out.count_variance = var;
    out.count_stderr = std::sqrt(var / static_cast<double>(n_samples));
    for (long c : out.hist_counts) out.total_real += c;
    out.scatter = std::move(scatter);
    return out;
}

double ellipse_inside_fraction(const std::vector<std::pair<double, double>>& pts, double tau,
                               double inflate) {
    if (pts.empty()) return 1.0;
    long inside = 0;
    double ax = (1.0 + tau) * inflate, ay = (1.0 - tau) * inflate;
    for (auto [re, im] : pts) {
        double u = re / ax, v = im / ay;
        if (u * u + v * v <= 1.0) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(pts.size());
}

}  // namespace elgin::mc
