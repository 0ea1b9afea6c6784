#include "polar/sc_decoder.hpp"

#include <stdexcept>

namespace polar {

namespace {

// Per-depth LLR and partial-sum arrays; depth d holds N >> d entries.
struct StageMemory {
    std::vector<LlrVector> alpha;
    std::vector<BitVector> beta;

    explicit StageMemory(int n) : alpha(n + 1), beta(n + 1) {
        for (int d = 0; d <= n; ++d) {
            alpha[static_cast<std::size_t>(d)].resize(std::size_t{1} << (n - d));
            beta[static_cast<std::size_t>(d)].resize(std::size_t{1} << (n - d));
        }
    }
};

struct ScWalker {
    const PolarCode& code;
    PmMode f_mode;
    StageMemory mem;
    BitVector u_hat;

    ScWalker(const PolarCode& c, PmMode m)
        : code(c), f_mode(m), mem(c.n),
          u_hat(static_cast<std::size_t>(c.block_length), 0) {}

    double f(double a, double b) const {
        return f_mode == PmMode::Exact ? f_exact(a, b) : f_hwf(a, b);
    }

    void walk(int depth, int start) {
        auto& a = mem.alpha[static_cast<std::size_t>(depth)];
        auto& b = mem.beta[static_cast<std::size_t>(depth)];
        const std::size_t len = a.size();
        if (len == 1) {
            std::uint8_t bit = leaf_decision(
                a[0], code.frozen[static_cast<std::size_t>(start)] != 0);
            b[0] = bit;
            u_hat[static_cast<std::size_t>(start)] = bit;
            return;
        }
        auto& ca = mem.alpha[static_cast<std::size_t>(depth + 1)];
        auto& cb = mem.beta[static_cast<std::size_t>(depth + 1)];
        const std::size_t half = len / 2;

        for (std::size_t i = 0; i < half; ++i)
            ca[i] = f(a[i], a[i + half]);
        walk(depth + 1, start);

        for (std::size_t i = 0; i < half; ++i) {
            b[i] = cb[i];  // keep the left partial sums for the combine below
            ca[i] = g_llr(a[i], a[i + half], cb[i]);
        }
        walk(depth + 1, start + static_cast<int>(half));

        for (std::size_t i = 0; i < half; ++i) {
            b[i] = static_cast<std::uint8_t>(b[i] ^ cb[i]);
            b[i + half] = cb[i];
        }
    }
};

}  // namespace

ScResult sc_decode(const PolarCode& code, const LlrVector& llr, PmMode f_mode) {
    if (llr.size() != static_cast<std::size_t>(code.block_length))
        throw std::invalid_argument("sc_decode: LLR length mismatch");
    ScWalker w(code, f_mode);
    w.mem.alpha[0] = llr;
    w.walk(0, 0);
    return ScResult{std::move(w.u_hat), std::move(w.mem.beta[0]),
                    2L * code.block_length - 2};
}

}  // namespace polar
