#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "polar/types.hpp"

namespace polar {

// Bit-serial CRC over a bit message. `poly` is the generator polynomial in
// normal (MSB-first) form without the leading x^width term. Reflected specs
// shift right with the reversed polynomial and emit the checksum LSB-first.
struct CrcSpec {
    int width = 0;
    std::uint32_t poly = 0;
    std::uint32_t init = 0;
    bool reflect = false;
    std::uint32_t xor_out = 0;

    static CrcSpec crc8();   // poly 0x07, init 0, non-reflected
    static CrcSpec crc32();  // poly 0x04C11DB7, init/xorout all-ones, reflected
};

// Parses "none", "crc8", "crc32"; throws std::invalid_argument otherwise.
std::optional<CrcSpec> crc_spec_by_name(const std::string& name);

// Checksum of a bit message, as `width` bits in transmission order.
BitVector crc_bits(const BitVector& message, const CrcSpec& spec);

// message || crc(message)
BitVector crc_attach(const BitVector& info, const CrcSpec& spec);

// True iff bits = m || crc(m). Throws std::invalid_argument when
// |bits| <= spec.width.
bool crc_check(const BitVector& bits, const CrcSpec& spec);

}  // namespace polar
