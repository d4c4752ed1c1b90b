// Timings of the OpenMP kernels against their serial references.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "elgin/density.hpp"
#include "elgin/montecarlo.hpp"
#include "elgin/variance.hpp"

namespace {

template <typename F>
double time_of(F&& f) {
    f();  // warm-up: page-faults, lazy tables, cpu clocks
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-32s %9.3fs %9.3fs %6.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-32s %10s %10s %7s\n", "kernel", "serial", "parallel", "speedup");

    {
        auto grid = elgin::density::make_grid(-2.5, 2.5, 161);
        double tau = 1.0 - 1.0 / 256.0;
        double s = time_of([&] { elgin::density::density_curve_exact(256, tau, grid, false); });
        double p = time_of([&] { elgin::density::density_curve_exact(256, tau, grid, true); });
        row("density curve N=256", s, p);
    }
    {
        double tau = 1.0 - 1.0 / 128.0;
        double s = time_of([&] { elgin::variance::variance_exact(128, tau, false); });
        double p = time_of([&] { elgin::variance::variance_exact(128, tau, true); });
        row("variance quadrature N=128", s, p);
    }
    {
        double s = time_of([&] { elgin::variance::kernel_double_sum(256, 1.0, false); });
        double p = time_of([&] { elgin::variance::kernel_double_sum(256, 1.0, true); });
        row("kernel double sum N=256", s, p);
    }
    {
        elgin::mc::EnsembleSpec spec{128, 1.0 - 1.0 / 128.0, elgin::mc::EntryDist::gaussian, 5};
        double s = time_of([&] { elgin::mc::run_experiment(spec, 200, {}, false, false); });
        double p = time_of([&] { elgin::mc::run_experiment(spec, 200, {}, false, true); });
        row("monte carlo N=128 x200", s, p);
    }
    return 0;
}
