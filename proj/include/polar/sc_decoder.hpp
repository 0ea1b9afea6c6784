#pragma once

#include "polar/code.hpp"
#include "polar/kernels.hpp"
#include "polar/types.hpp"

namespace polar {

struct ScResult {
    BitVector u_hat;   // estimated source bits, frozen positions zero
    BitVector x_hat;   // re-encoded codeword
    long time_steps;   // always 2N - 2
};

// Plain successive cancellation over the full binary tree. f_mode selects the
// exact or min-sum check-node update.
ScResult sc_decode(const PolarCode& code, const LlrVector& llr, PmMode f_mode);

}  // namespace polar
