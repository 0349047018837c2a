#pragma once

#include <cstdint>
#include <random>

namespace evonf {

/// Deterministic random source.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard)
/// and maps raw 64-bit draws to doubles/ints with explicit arithmetic
/// instead of std::uniform_*_distribution, whose mappings are
/// implementation-defined. Seeded runs therefore reproduce bit-identical
/// streams across compilers and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi], inclusive. Modulo mapping; the bias is
    /// below 2^-57 for the small ranges used here.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    bool coin(double p = 0.5) { return uniform01() < p; }

    /// Standard normal via basic Box-Muller. Stateless: consumes exactly two
    /// 64-bit draws per call.
    double gaussian();

    /// Derives an independent stream seed from (seed, salt) via splitmix64.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt);

  private:
    std::mt19937_64 engine_;
};

} // namespace evonf
