#pragma once

#include <cstdint>
#include <random>

namespace econfit {

// Portable uniform stream: std::mt19937_64 output is fixed by the standard,
// and the double conversion below takes the top 53 bits, so a seed replays
// to the same sequence on every conforming platform. Standard-library
// distributions are avoided because their algorithms are implementation-defined.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1).
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t next_raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Standard normal deviate via Box-Muller on the portable stream.
double standard_normal(UniformStream& stream);

} // namespace econfit
