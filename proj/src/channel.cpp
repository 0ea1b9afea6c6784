#include "polar/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace polar {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

Prng::Prng(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = stream_id ^ 0xD2B74407B1CE6E93ull;
    std::uint64_t b = splitmix64(s);
    state_ = a ^ (b + 0x9E3779B97F4A7C15ull);
    (void)next_u64();
}

std::uint64_t Prng::next_u64() {
    return splitmix64(state_);
}

double Prng::uniform() {
    // 53 mantissa bits, shifted into (0, 1] so log() below stays finite
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double Prng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

std::uint8_t Prng::bit() {
    return static_cast<std::uint8_t>(next_u64() >> 63);
}

std::vector<double> modulate_bpsk(const BitVector& x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = 1.0 - 2.0 * static_cast<double>(x[i]);
    return y;
}

double ebn0_to_sigma(double ebn0_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("ebn0_to_sigma: rate must be in (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

std::vector<double> transmit(const std::vector<double>& symbols,
                             const NoiseModel& model) {
    Prng rng(model.seed, model.stream_id);
    std::vector<double> r(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i)
        r[i] = symbols[i] + model.sigma * rng.gaussian();
    return r;
}

LlrVector llr_demod(const std::vector<double>& received, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("llr_demod: sigma must be positive");
    const double scale = 2.0 / (sigma * sigma);
    LlrVector alpha(received.size());
    for (std::size_t i = 0; i < received.size(); ++i)
        alpha[i] = scale * received[i];
    return alpha;
}

}  // namespace polar
