#pragma once

#include <cstdint>
#include <utility>

namespace elgin::rng {

// Keyed counter generator: every (seed, sample, entry) triple owns an
// independent substream, so parallel sampling is reproducible regardless of
// the worker count.  Output mixing is the splitmix64 finalizer applied to a
// keyed counter.
class CounterRng {
public:
    static uint64_t mix64(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    CounterRng(uint64_t seed, uint64_t sample, uint64_t entry) {
        key_ = mix64(seed ^ 0x5851f42d4c957f2dULL);
        key_ = mix64(key_ ^ (sample * 0xda942042e4dd58b5ULL));
        key_ = mix64(key_ ^ (entry * 0x9e3779b97f4a7c15ULL));
    }

    uint64_t next_u64() { return mix64(key_ + (++ctr_) * 0xbf58476d1ce4e5b9ULL); }

    // uniform on (0,1), never exactly 0 or 1
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal pair by polar rejection (exact, inverse-free)
    std::pair<double, double> next_normal_pair() {
        for (;;) {
            double u = 2.0 * next_unit() - 1.0;
            double v = 2.0 * next_unit() - 1.0;
            double s = u * u + v * v;
            if (s >= 1.0 || s == 0.0) continue;
            double f = std::sqrt(-2.0 * std::log(s) / s);
            return {u * f, v * f};
        }
    }

private:
    uint64_t key_ = 0;
    uint64_t ctr_ = 0;
};

}  // namespace elgin::rng
