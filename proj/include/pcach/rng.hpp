#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pcach {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view s);

/// mt19937_64 with portable transforms. The standard library's
/// distributions are implementation-defined, so sampling is done here to
/// keep generated output identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream keyed by (seed, name, tag, index).
    static Rng stream(std::uint64_t seed, std::string_view name, std::string_view tag, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    bool bernoulli(double p) { return uniform() < p; }
    double normal();
    double exponential(double rate);
    /// Log-normal scaled so its mean is `mean`.
    double lognormal_with_mean(double mean, double sigma);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace pcach
