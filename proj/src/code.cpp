#include "polar/code.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polar {

std::vector<int> PolarCode::info_positions() const {
    std::vector<int> pos;
    pos.reserve(static_cast<std::size_t>(info_length));
    for (int i = 0; i < block_length; ++i)
        if (!frozen[static_cast<std::size_t>(i)])
            pos.push_back(i);
    return pos;
}

int PolarCode::payload_length() const {
    return crc ? info_length - crc->width : info_length;
}

namespace {

void check_code_params(int n, int K) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("construct_code: n out of range");
    if (K < 1 || K > (1 << n))
        throw std::invalid_argument("construct_code: K out of range");
}

void check_crc_fits(const PolarCode& code) {
    if (code.crc && code.info_length < code.crc->width)
        throw std::invalid_argument("code: K smaller than CRC width");
}

// Gaussian-approximation density evolution for BPSK-AWGN. The channel state
// is the mean of the all-zero-codeword LLR distribution; phi() maps a mean to
// the expected soft erasure and is the usual two-branch fit, joined at the
// point where the branches cross so it stays continuous and monotone.
constexpr double kPhiSwitch = 14.394352942168599;

double phi_ln(double x) {
    if (x < kPhiSwitch)
        return 0.0218 - 0.4527 * std::pow(x, 0.86);
    return 0.5 * std::log(M_PI / x) - x / 4.0 + std::log(1.0 - 10.0 / (7.0 * x));
}

double phi_inv_ln(double ln_y, double hi) {
    double lo = 1e-12;
    while (phi_ln(hi) > ln_y)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (phi_ln(mid) > ln_y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> ga_means(int n, double mean0) {
    std::vector<double> cur{mean0};
    for (int level = 0; level < n; ++level) {
        std::vector<double> next(cur.size() * 2);
        for (std::size_t k = 0; k < cur.size(); ++k) {
            double m = cur[k];
            // left child sees the degraded combination, right child the sum
            double p_ln = phi_ln(m);
            double ln_y = p_ln + std::log(2.0 - std::exp(p_ln));
            next[2 * k] = phi_inv_ln(ln_y, m);
            next[2 * k + 1] = 2.0 * m;
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> bhattacharyya_params(int n, double z0) {
    std::vector<double> cur{z0};
    for (int level = 0; level < n; ++level) {
        std::vector<double> next(cur.size() * 2);
        for (std::size_t k = 0; k < cur.size(); ++k) {
            double z = cur[k];
            next[2 * k] = 2.0 * z - z * z;
            next[2 * k + 1] = z * z;
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

std::vector<double> channel_reliabilities(int n, double design_ebn0_db,
                                          ConstructionMethod method) {
    // One reliability order per design point: the reference channel is the
    // design Eb/N0 at rate 1/2, sigma^2 = 10^(-EbN0/10), so codes of every K
    // carve nested frozen sets from the same order.
    double sigma_sq = std::pow(10.0, -design_ebn0_db / 10.0);
    if (method == ConstructionMethod::GaussianApprox) {
        return ga_means(n, 2.0 / sigma_sq);
    }
    std::vector<double> z = bhattacharyya_params(n, std::exp(-0.5 / sigma_sq));
    for (double& v : z)
        v = -v;  // smaller Bhattacharyya parameter = more reliable
    return z;
}

PolarCode construct_code(int n, int K, double design_ebn0_db,
                         ConstructionMethod method,
                         std::optional<CrcSpec> crc) {
    check_code_params(n, K);
    const int N = 1 << n;
    std::vector<double> rel = channel_reliabilities(n, design_ebn0_db, method);
    std::vector<int> order(static_cast<std::size_t>(N));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ra = rel[static_cast<std::size_t>(a)];
        double rb = rel[static_cast<std::size_t>(b)];
        if (ra != rb)
            return ra < rb;
        return a < b;  // tie: freeze the lower index first
    });

    PolarCode code;
    code.n = n;
    code.block_length = N;
    code.info_length = K;
    code.frozen.assign(static_cast<std::size_t>(N), 0);
    for (int i = 0; i < N - K; ++i)
        code.frozen[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
    code.crc = crc;
    check_crc_fits(code);
    return code;
}

PolarCode load_frozen_set(const std::string& text, int n,
                          std::optional<CrcSpec> crc) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("load_frozen_set: n out of range");
    const int N = 1 << n;
    std::vector<std::uint8_t> frozen(static_cast<std::size_t>(N), 0);
    int count = 0;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        long idx;
        while (ls >> idx) {
            if (idx < 0 || idx >= N)
                throw std::runtime_error("load_frozen_set: index " +
                                         std::to_string(idx) + " out of range");
            if (frozen[static_cast<std::size_t>(idx)])
                throw std::runtime_error("load_frozen_set: duplicate index " +
                                         std::to_string(idx));
            frozen[static_cast<std::size_t>(idx)] = 1;
            ++count;
        }
        if (!ls.eof())
            throw std::runtime_error("load_frozen_set: malformed line: " + line);
    }
    if (count == N)
        throw std::runtime_error("load_frozen_set: all positions frozen");

    PolarCode code;
    code.n = n;
    code.block_length = N;
    code.info_length = N - count;
    code.frozen = std::move(frozen);
    code.crc = crc;
    check_crc_fits(code);
    return code;
}

std::string format_frozen_set(const PolarCode& code) {
    std::ostringstream out;
    for (int i = 0; i < code.block_length; ++i)
        if (code.frozen[static_cast<std::size_t>(i)])
            out << i << '\n';
    return out.str();
}

void polar_transform(BitVector& v) {
    const std::size_t N = v.size();
    for (std::size_t stride = 1; stride < N; stride *= 2)
        for (std::size_t block = 0; block < N; block += 2 * stride)
            for (std::size_t j = 0; j < stride; ++j)
                v[block + j] ^= v[block + j + stride];
}

BitVector encode(const PolarCode& code, const BitVector& u) {
    if (u.size() != static_cast<std::size_t>(code.block_length))
        throw std::invalid_argument("encode: input length mismatch");
    for (int i = 0; i < code.block_length; ++i)
        if (code.frozen[static_cast<std::size_t>(i)] && u[static_cast<std::size_t>(i)])
            throw std::invalid_argument("encode: nonzero frozen position " +
                                        std::to_string(i));
    BitVector x = u;
    polar_transform(x);
    return x;
}

BitVector place_message(const PolarCode& code, const BitVector& message) {
    if (message.size() != static_cast<std::size_t>(code.info_length))
        throw std::invalid_argument("place_message: message length mismatch");
    BitVector u(static_cast<std::size_t>(code.block_length), 0);
    std::size_t j = 0;
    for (int i = 0; i < code.block_length; ++i)
        if (!code.frozen[static_cast<std::size_t>(i)])
            u[static_cast<std::size_t>(i)] = message[j++];
    return u;
}

BitVector extract_message(const PolarCode& code, const BitVector& u) {
    if (u.size() != static_cast<std::size_t>(code.block_length))
        throw std::invalid_argument("extract_message: length mismatch");
    BitVector message;
    message.reserve(static_cast<std::size_t>(code.info_length));
    for (int i = 0; i < code.block_length; ++i)
        if (!code.frozen[static_cast<std::size_t>(i)])
            message.push_back(u[static_cast<std::size_t>(i)]);
    return message;
}

BitVector attach_code_crc(const PolarCode& code, const BitVector& payload) {
    if (!code.crc)
        return payload;
    if (payload.size() != static_cast<std::size_t>(code.payload_length()))
        throw std::invalid_argument("attach_code_crc: payload length mismatch");
    return crc_attach(payload, *code.crc);
}

}  // namespace polar
