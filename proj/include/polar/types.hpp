#pragma once

#include <cstdint>
#include <vector>

namespace polar {

// Bits are stored one per byte, values restricted to {0,1}.
using BitVector = std::vector<std::uint8_t>;

// Natural-log-domain log-likelihood ratios; positive means bit 0 more likely.
using LlrVector = std::vector<double>;

inline BitVector xor_bits(const BitVector& a, const BitVector& b) {
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
    return out;
}

}  // namespace polar
