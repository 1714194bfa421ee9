#pragma once

#include <cstdint>
#include <limits>

namespace metasir {

/// SplitMix64 finalizer; a bijective 64-bit mix.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the random stream for (master seed, realization index, attempt).
/// Streams depend only on these three values, never on scheduling.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index, std::uint64_t attempt = 0);

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class StreamRng
{
  public:
    using result_type = std::uint64_t;

    explicit StreamRng(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }
    /// Standard exponential.
    double exponential();

  private:
    std::uint64_t state_;
};

} // namespace metasir
