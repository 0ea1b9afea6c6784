#include "polar/crc.hpp"

#include <stdexcept>

namespace polar {

CrcSpec CrcSpec::crc8() {
    return CrcSpec{8, 0x07u, 0x00u, false, 0x00u};
}

CrcSpec CrcSpec::crc32() {
    return CrcSpec{32, 0x04C11DB7u, 0xFFFFFFFFu, true, 0xFFFFFFFFu};
}

std::optional<CrcSpec> crc_spec_by_name(const std::string& name) {
    if (name == "none")
        return std::nullopt;
    if (name == "crc8")
        return CrcSpec::crc8();
    if (name == "crc32")
        return CrcSpec::crc32();
    throw std::invalid_argument("unknown CRC spec: " + name);
}

namespace {

std::uint32_t reverse_bits(std::uint32_t v, int width) {
    std::uint32_t r = 0;
    for (int i = 0; i < width; ++i)
        if (v & (1u << i))
            r |= 1u << (width - 1 - i);
    return r;
}

std::uint32_t width_mask(int width) {
    return width == 32 ? 0xFFFFFFFFu : ((1u << width) - 1u);
}

std::uint32_t crc_register(const BitVector& message, const CrcSpec& spec) {
    const std::uint32_t mask = width_mask(spec.width);
    std::uint32_t reg = spec.init & mask;
    if (spec.reflect) {
        const std::uint32_t poly = reverse_bits(spec.poly & mask, spec.width);
        for (std::uint8_t bit : message) {
            reg ^= static_cast<std::uint32_t>(bit & 1u);
            bool lsb = reg & 1u;
            reg >>= 1;
            if (lsb)
                reg ^= poly;
        }
    } else {
        const std::uint32_t top = 1u << (spec.width - 1);
        for (std::uint8_t bit : message) {
            reg ^= static_cast<std::uint32_t>(bit & 1u) << (spec.width - 1);
            bool msb = reg & top;
            reg = (reg << 1) & mask;
            if (msb)
                reg ^= spec.poly & mask;
        }
    }
    return (reg ^ spec.xor_out) & mask;
}

}  // namespace

BitVector crc_bits(const BitVector& message, const CrcSpec& spec) {
    const std::uint32_t reg = crc_register(message, spec);
    BitVector out(static_cast<std::size_t>(spec.width));
    for (int i = 0; i < spec.width; ++i) {
        // reflected CRCs transmit LSB-first, plain ones MSB-first
        int shift = spec.reflect ? i : (spec.width - 1 - i);
        out[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((reg >> shift) & 1u);
    }
    return out;
}

BitVector crc_attach(const BitVector& info, const CrcSpec& spec) {
    BitVector out = info;
    BitVector tail = crc_bits(info, spec);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

bool crc_check(const BitVector& bits, const CrcSpec& spec) {
    if (bits.size() <= static_cast<std::size_t>(spec.width))
        throw std::invalid_argument("crc_check: message shorter than CRC width");
    BitVector message(bits.begin(), bits.end() - spec.width);
    BitVector expect = crc_bits(message, spec);
    for (int i = 0; i < spec.width; ++i)
        if (expect[static_cast<std::size_t>(i)] !=
            bits[bits.size() - static_cast<std::size_t>(spec.width) +
                 static_cast<std::size_t>(i)])
            return false;
    return true;
}

}  // namespace polar
