// SPDX-License-Identifier: MIT
//
// Counter-based random number generation with documented, bit-reproducible
// substream derivation, plus the handful of samplers the model catalog needs.
//
// Generator: SplitMix64 (Steele, Lea, Flood; JDK 8 SplittableRandom finalizer).
// The state advances by the 64-bit golden-gamma constant and each output is
// the mix of the advanced state, so output i is a pure function mix(seed +
// (i+1)*GAMMA) of the stream seed -- a counter-based scheme with no warm-up.
//
// Substreams: substream_seed(seed, a, b) = mix(mix(seed ^ mix(a)) ^ mix(b) ^ PHI)
// where mix is the SplitMix64 finalizer. The harness derives one stream per
// (seed, n, replicationIndex); results are therefore independent of thread
// count and schedule.
//
// Distribution algorithms are fixed here (not delegated to std::<random>,
// whose distributions are not implementation-stable):
//   uniform (0,1): ((next() >> 11) + 0.5) * 2^-53, strictly inside (0,1)
//   normal:        Box-Muller, cosine branch only (two uniforms per draw)
//   exponential:   inversion, -scale * log(U)
//   gamma:         Marsaglia-Tsang squeeze (shape >= 1); boost to shape+1 and
//                  scale by U^(1/shape) for shape < 1
//   poisson:       product-of-uniforms inversion for mean <= 30, exact
//                  splitting into <= 30 pieces above (sum of Poissons)

#ifndef LEVYEST_RNG_HPP
#define LEVYEST_RNG_HPP

#include <cstdint>

namespace levyest {

namespace detail {
/// SplitMix64 output mixer (finalizer).
inline std::uint64_t splitmix_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Derive a substream seed from a base seed and two stream coordinates.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    using detail::splitmix_mix;
    std::uint64_t z = splitmix_mix(seed ^ splitmix_mix(a ^ 0x9E3779B97F4A7C15ULL));
    return splitmix_mix(z ^ splitmix_mix(b) ^ 0x6A09E667F3BCC909ULL);
}

/// Counter-based SplitMix64 stream.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::splitmix_mix(state_);
    }

    /// Uniform draw strictly inside (0, 1).
    double next_unit() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

/// Sampler facade over one SplitMix64 stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return gen_.next_unit(); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * gen_.next_unit(); }
    double normal();
    double exponential(double scale);      // mean = scale
    double gamma(double shape, double scale);
    long poisson(double mean);

  private:
    SplitMix64 gen_;
};

} // namespace levyest

#endif // LEVYEST_RNG_HPP
