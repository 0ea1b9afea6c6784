#include <doctest.h>

#include "polar/crc.hpp"
#include "test_util.hpp"

using polar::BitVector;
using polar::CrcSpec;

namespace {

// independent long-division oracle: append `width` zeros, divide by the
// generator polynomial MSB-first, remainder is the checksum
std::uint32_t long_division_crc(const BitVector& message, int width,
                                std::uint32_t poly) {
    std::vector<std::uint8_t> work(message.begin(), message.end());
    work.insert(work.end(), static_cast<std::size_t>(width), 0);
    for (std::size_t i = 0; i < message.size(); ++i) {
        if (!work[i])
            continue;
        work[i] = 0;
        for (int b = 0; b < width; ++b) {
            std::uint8_t pbit =
                static_cast<std::uint8_t>((poly >> (width - 1 - b)) & 1u);
            work[i + 1 + static_cast<std::size_t>(b)] =
                static_cast<std::uint8_t>(work[i + 1 + static_cast<std::size_t>(b)] ^ pbit);
        }
    }
    std::uint32_t rem = 0;
    for (int b = 0; b < width; ++b)
        rem = (rem << 1) | work[message.size() + static_cast<std::size_t>(b)];
    return rem;
}

}  // namespace

TEST_CASE("crc spec lookup") {
    CHECK(!polar::crc_spec_by_name("none").has_value());
    auto c8 = polar::crc_spec_by_name("crc8");
    REQUIRE(c8.has_value());
    CHECK(c8->width == 8);
    CHECK(c8->poly == 0x07u);
    CHECK_FALSE(c8->reflect);
    auto c32 = polar::crc_spec_by_name("crc32");
    REQUIRE(c32.has_value());
    CHECK(c32->width == 32);
    CHECK(c32->poly == 0x04C11DB7u);
    CHECK(c32->reflect);
    CHECK_THROWS_AS((void)polar::crc_spec_by_name("crc5"), std::invalid_argument);
}

TEST_CASE("crc of the empty and all-zero messages") {
    CrcSpec c8 = CrcSpec::crc8();
    BitVector empty;
    BitVector attached = polar::crc_attach(empty, c8);
    CHECK(attached.size() == 8);
    CHECK(attached == polar::crc_bits(empty, c8));

    // zero register stays zero for a zero-init, zero-xorout spec
    BitVector zeros(24, 0);
    BitVector out = polar::crc_attach(zeros, c8);
    CHECK(out.size() == 32);
    for (std::uint8_t b : out)
        CHECK(b == 0);
    CHECK(polar::crc_check(out, c8));
}

TEST_CASE("crc8 matches the long-division oracle on a fixed pattern") {
    // 0xB2 0x6B 0xC5, MSB-first
    BitVector pattern = {1, 0, 1, 1, 0, 0, 1, 0, 0, 1, 1, 0,
                         1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 1};
    CrcSpec c8 = CrcSpec::crc8();
    std::uint32_t oracle = long_division_crc(pattern, 8, c8.poly);
    CHECK(oracle == 0x0Bu);

    BitVector out = polar::crc_attach(pattern, c8);
    REQUIRE(out.size() == 32);
    std::uint32_t got = 0;
    for (int b = 0; b < 8; ++b)
        got = (got << 1) | out[24 + static_cast<std::size_t>(b)];
    CHECK(got == oracle);
}

TEST_CASE("crc round trip") {
    auto r = testutil::rng(11);
    for (const CrcSpec& spec : {CrcSpec::crc8(), CrcSpec::crc32()}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t len = 1 + static_cast<std::size_t>(r.next_u64() % 64);
            BitVector msg = testutil::random_bits(r, len);
            CHECK(polar::crc_check(polar::crc_attach(msg, spec), spec));
        }
    }
}

TEST_CASE("crc detects every single-bit flip") {
    auto r = testutil::rng(12);
    for (const CrcSpec& spec : {CrcSpec::crc8(), CrcSpec::crc32()}) {
        BitVector msg = testutil::random_bits(r, 40);
        BitVector coded = polar::crc_attach(msg, spec);
        for (std::size_t i = 0; i < coded.size(); ++i) {
            BitVector flipped = coded;
            flipped[i] = static_cast<std::uint8_t>(1 - flipped[i]);
            CHECK_FALSE(polar::crc_check(flipped, spec));
        }
    }
}

TEST_CASE("crc_check rejects too-short input") {
    CHECK_THROWS_AS((void)polar::crc_check(BitVector(8, 0), CrcSpec::crc8()),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)polar::crc_check(BitVector(3, 0), CrcSpec::crc8()),
                    std::invalid_argument);
}
