#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polar/crc.hpp"
#include "polar/types.hpp"

namespace polar {

enum class ConstructionMethod { GaussianApprox, Bhattacharyya };

// Code definition: block length N = 2^n, K non-frozen positions (information
// bits, including CRC bits when a CRC is attached), frozen mask in natural
// (non-bit-reversed) input order.
struct PolarCode {
    int n = 0;
    int block_length = 0;             // N = 2^n
    int info_length = 0;              // K
    std::vector<std::uint8_t> frozen; // size N, 1 = frozen
    std::optional<CrcSpec> crc;

    // Non-frozen indices in ascending order; message bits are placed here.
    std::vector<int> info_positions() const;

    // K minus the CRC width (K when no CRC).
    int payload_length() const;
};

// Bit-channel reliabilities for one design point. Index order matches the
// encoder's natural input order; larger value = more reliable.
std::vector<double> channel_reliabilities(int n, double design_ebn0_db,
                                          ConstructionMethod method);

// Freezes the N-K least reliable bit-channels at the design point. One design
// point yields a single reliability order, so frozen sets nest across K.
// Ties freeze the lower index.
PolarCode construct_code(int n, int K, double design_ebn0_db,
                         ConstructionMethod method,
                         std::optional<CrcSpec> crc = std::nullopt);

// Frozen-set document: one decimal index per line, '#' starts a comment.
PolarCode load_frozen_set(const std::string& text, int n,
                          std::optional<CrcSpec> crc = std::nullopt);
std::string format_frozen_set(const PolarCode& code);

// x = u * G^(kron n) over GF(2), in-place butterfly. Throws when a frozen
// position of u is nonzero.
BitVector encode(const PolarCode& code, const BitVector& u);

// The raw transform without the frozen-position check (it is an involution).
void polar_transform(BitVector& v);

// Scatters payload||crc bits into the non-frozen positions (ascending) of a
// length-N vector, zeros elsewhere.
BitVector place_message(const PolarCode& code, const BitVector& message);

// Gathers the K non-frozen positions of u back out.
BitVector extract_message(const PolarCode& code, const BitVector& u);

// Attaches the code's CRC to a payload (identity when no CRC).
BitVector attach_code_crc(const PolarCode& code, const BitVector& payload);

}  // namespace polar
