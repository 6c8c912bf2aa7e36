#ifndef IMDD_RNG_HPP
#define IMDD_RNG_HPP

#include <cstdint>
#include <random>

namespace imdd {

// SplitMix64 finalizer (Steele/Lea/Flood constants).
std::uint64_t mix64(std::uint64_t z);

// Independent substream engine for (seed, stream). mt19937_64 output is fully
// specified by the standard, so sequences are identical across platforms.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

// Uniform double strictly inside (0, 1), 53-bit resolution.
inline double uniform_unit(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse standard normal CDF, Wichura's AS241 (PPND16), |error| < 1e-15.
double inverse_normal_cdf(double p);

inline double standard_normal(std::mt19937_64& gen) {
    return inverse_normal_cdf(uniform_unit(gen));
}

} // namespace imdd

#endif
