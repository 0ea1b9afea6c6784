#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polar/channel.hpp"
#include "polar/types.hpp"

namespace testutil {

// deterministic input generators for the property tests
inline polar::Prng rng(std::uint64_t stream) {
    return polar::Prng(0xC0FFEEull, stream);
}

inline double uniform_in(polar::Prng& r, double lo, double hi) {
    return lo + (hi - lo) * r.uniform();
}

inline polar::LlrVector random_llrs(polar::Prng& r, std::size_t n,
                                    double scale = 2.0) {
    polar::LlrVector v(n);
    for (auto& x : v)
        x = scale * r.gaussian();
    return v;
}

inline polar::BitVector random_bits(polar::Prng& r, std::size_t n) {
    polar::BitVector v(n);
    for (auto& b : v)
        b = r.bit();
    return v;
}

}  // namespace testutil
