#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace elgin::mc {

enum class EntryDist { gaussian, uniform, rademacher };

EntryDist parse_dist(const std::string& name);
std::string dist_name(EntryDist d);

// One matrix ensemble: entries scaled by 1/sqrt(N); off-diagonal pairs
// (x_jk, x_kj) carry correlation tau, diagonal entries are independent with
// unit variance.  tau = 1 - alpha^2/N in the almost-Hermitian regime.
struct EnsembleSpec {
    long n = 0;
    double tau = 0.0;
    EntryDist dist = EntryDist::gaussian;
    uint64_t seed = 0;
};

Eigen::MatrixXd sample_matrix(const EnsembleSpec& spec, uint64_t sample_index);

// Real Schur classification: 1x1 diagonal blocks are real eigenvalues, 2x2
// blocks complex pairs.  No epsilon thresholds involved.
struct SpectrumSample {
    std::vector<double> real_eigs;                    // ascending
    std::vector<std::pair<double, double>> complex_pairs;  // (re, im > 0)
    long real_count = 0;
};

SpectrumSample spectrum(const Eigen::MatrixXd& m);

struct HistogramSpec {
    double lo = -2.2;
    double hi = 2.2;
    int bins = 20;
};

struct ExperimentStats {
    long n_samples = 0;
    double count_mean = 0.0;
    double count_variance = 0.0;  // unbiased sample variance
    double count_stderr = 0.0;    // standard error of count_mean
    HistogramSpec hist;
    std::vector<long> hist_counts;  // out-of-range values clamp to the end bins
    long total_real = 0;
    std::vector<std::pair<double, double>> scatter;  // complex pairs, sample 0 only
    bool parity_ok = true;  // every sample satisfied real_count == N (mod 2)
};

// Independent samples, each on its own RNG substream; aggregation is done in
// sample-index order so results are bit-identical for any worker count.
ExperimentStats run_experiment(const EnsembleSpec& spec, long n_samples, const HistogramSpec& hist,
                               bool collect_scatter = false, bool parallel = true);

// Share of points of the complex-pair cloud inside the ellipse
// (x/(1+tau))^2 + (y/(1-tau))^2 <= inflate^2.
double ellipse_inside_fraction(const std::vector<std::pair<double, double>>& pts, double tau,
                               double inflate = 1.02);

}  // namespace elgin::mc
