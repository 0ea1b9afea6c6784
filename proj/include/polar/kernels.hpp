#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "polar/types.hpp"

namespace polar {

// Exact arithmetic pairs the boxplus check-node update with the logarithmic
// path-metric penalty; Hwf pairs min-sum with the absolute-value penalty.
// A decode fixes one mode throughout.
enum class PmMode { Exact, Hwf };

// log(1 + e^x) without overflow.
inline double softplus(double x) {
    if (x > 0.0)
        return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

// Check-node update, 2 atanh(tanh(a/2) tanh(b/2)), evaluated as
// log((1 + e^(a+b)) / (e^a + e^b)) which never saturates an atanh.
inline double f_exact(double a, double b) {
    return softplus(a + b) - (std::max(a, b) + softplus(-std::fabs(a - b)));
}

// Min-sum check-node update.
inline double f_hwf(double a, double b) {
    double m = std::min(std::fabs(a), std::fabs(b));
    return std::signbit(a) == std::signbit(b) ? m : -m;
}

// Variable-node update once the left bit estimate is known.
inline double g_llr(double a, double b, std::uint8_t beta_left) {
    return beta_left ? b - a : b + a;
}

inline std::uint8_t hard_decision(double alpha) {
    return alpha >= 0.0 ? 0 : 1;  // alpha == 0 decides bit 0
}

inline std::uint8_t leaf_decision(double alpha, bool is_frozen) {
    return is_frozen ? 0 : hard_decision(alpha);
}

// Partial-sum combine: (bl ^ br, br).
inline BitVector combine_beta(const BitVector& beta_left,
                              const BitVector& beta_right) {
    if (beta_left.size() != beta_right.size())
        throw std::invalid_argument("combine_beta: length mismatch");
    BitVector out(2 * beta_left.size());
    for (std::size_t i = 0; i < beta_left.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(beta_left[i] ^ beta_right[i]);
        out[beta_left.size() + i] = beta_right[i];
    }
    return out;
}

// Path-metric penalty for estimating bit u_hat where the local LLR is alpha.
inline double pm_update(double pm, double alpha, std::uint8_t u_hat,
                        PmMode mode) {
    if (mode == PmMode::Exact)
        return pm + softplus(-(1.0 - 2.0 * static_cast<double>(u_hat)) * alpha);
    return u_hat != hard_decision(alpha) ? pm + std::fabs(alpha) : pm;
}

}  // namespace polar
