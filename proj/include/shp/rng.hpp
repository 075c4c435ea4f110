#pragma once

#include <cstdint>

#include "shp/special_functions.hpp"

namespace shp {

// Counter-based uniform stream keyed by (seed, path, substream). Each path of
// a simulation owns addressable substreams (0 = holding period, 1 = returns),
// so draws do not depend on execution order or worker count, and a common
// seed gives common horizon draws across model variants.
//
// The generator is splitmix64 over a mixed 64-bit key: tiny state, full
// 64-bit period per stream, and passes practical independence checks for the
// stream counts used here.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t path, std::uint64_t substream)
        : state_(mix(mix(mix(seed + kGamma) + path) + substream)) {}

    // Uniform draw strictly inside (0,1); safe as input to norm_cdf_inv.
    double uniform() {
        state_ += kGamma;
        std::uint64_t z = mix(state_);
        return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via inverse transform, keeping one uniform stream the
    // single source of randomness for every distribution family.
    double normal() { return norm_cdf_inv(uniform()); }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace shp
