#pragma once

#include <cstdint>

#include "polar/types.hpp"

namespace polar {

// Deterministic stream generator: splitmix64 core with Box-Muller normals.
// Every (seed, stream_id) pair is an independent stream whose output does not
// depend on platform or library internals, so parallel Monte-Carlo runs
// reproduce bit-for-bit.
class Prng {
  public:
    Prng(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    double uniform();         // (0, 1]
    double gaussian();        // standard normal
    std::uint8_t bit();       // fair bit

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct NoiseModel {
    double sigma = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// {0,1} -> {+1,-1}
std::vector<double> modulate_bpsk(const BitVector& x);

// sigma = sqrt(1 / (2 R 10^(EbN0/10))) for unit-energy BPSK.
double ebn0_to_sigma(double ebn0_db, double rate);

// r_i = y_i + n_i with n_i iid N(0, sigma^2) drawn from the model's stream.
std::vector<double> transmit(const std::vector<double>& symbols,
                             const NoiseModel& model);

// alpha_i = 2 r_i / sigma^2
LlrVector llr_demod(const std::vector<double>& received, double sigma);

}  // namespace polar
