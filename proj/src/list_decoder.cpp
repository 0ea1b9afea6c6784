#include "polar/list_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace polar {

std::vector<SplitCandidate> prune_candidates(std::vector<SplitCandidate> cands,
                                             int list_size) {
    std::sort(cands.begin(), cands.end(),
              [](const SplitCandidate& a, const SplitCandidate& b) {
                  return std::tie(a.pm, a.parent, a.bit) <
                         std::tie(b.pm, b.parent, b.bit);
              });
    if (cands.size() > static_cast<std::size_t>(list_size))
        cands.resize(static_cast<std::size_t>(list_size));
    return cands;
}

namespace {

double rate0_increment(const LlrVector& alpha, PmMode mode) {
    double inc = 0.0;
    if (mode == PmMode::Exact) {
        for (double a : alpha)
            inc += softplus(-a);
    } else {
        for (double a : alpha)
            if (a < 0.0)
                inc -= a;
    }
    return inc;
}

double rep_increment(const LlrVector& alpha, std::uint8_t bit, PmMode mode) {
    double inc = 0.0;
    for (double a : alpha)
        inc = pm_update(inc, a, bit, mode);
    return inc;
}

// Rebuilds a path vector from pruned candidates, copying a parent only while
// it still has later uses.
template <typename Path, typename Apply>
std::vector<Path> materialize(std::vector<Path>& paths,
                              const std::vector<SplitCandidate>& chosen,
                              Apply&& apply) {
    std::vector<int> uses(paths.size(), 0);
    for (const auto& c : chosen)
        ++uses[static_cast<std::size_t>(c.parent)];
    std::vector<Path> next;
    next.reserve(chosen.size());
    for (const auto& c : chosen) {
        auto idx = static_cast<std::size_t>(c.parent);
        if (--uses[idx] == 0)
            next.push_back(std::move(paths[idx]));
        else
            next.push_back(paths[idx]);
        next.back().pm = c.pm;
        apply(next.back(), c.bit);
    }
    return next;
}

}  // namespace

std::vector<NodePath> decode_rate0(std::vector<NodePath> paths, PmMode mode) {
    for (auto& p : paths) {
        p.pm += rate0_increment(p.alpha, mode);
        p.beta.assign(p.alpha.size(), 0);
    }
    return paths;
}

std::vector<NodePath> decode_rep(std::vector<NodePath> paths, int list_size,
                                 PmMode mode) {
    std::vector<SplitCandidate> cands;
    cands.reserve(2 * paths.size());
    for (std::size_t l = 0; l < paths.size(); ++l)
        for (std::uint8_t bit = 0; bit < 2; ++bit)
            cands.push_back({paths[l].pm + rep_increment(paths[l].alpha, bit, mode),
                             static_cast<int>(l), bit});
    auto chosen = prune_candidates(std::move(cands), list_size);
    return materialize(paths, chosen, [](NodePath& p, std::uint8_t bit) {
        p.beta.assign(p.alpha.size(), bit);
    });
}

// Candidate metrics inside a Rate-1 node carry the full pattern cost from the
// start: the exact metric charges its per-position minimum softplus(-|a_i|)
// on entry, after which a flip costs exactly |a_i| in either metric (the
// min-sum floor is zero). Scored this way, prunes rank by total pattern cost,
// so the survivor set does not depend on the order positions are decided in.
namespace {

void charge_rate1_floor(std::vector<NodePath>& paths, PmMode mode) {
    if (mode != PmMode::Exact)
        return;
    for (auto& p : paths)
        for (double a : p.alpha)
            p.pm += softplus(-std::fabs(a));
}

}  // namespace

std::vector<NodePath> decode_rate1_sscl(std::vector<NodePath> paths,
                                        int list_size, PmMode mode) {
    const std::size_t len = paths.empty() ? 0 : paths.front().alpha.size();
    charge_rate1_floor(paths, mode);
    for (auto& p : paths)
        p.beta.assign(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<SplitCandidate> cands;
        cands.reserve(2 * paths.size());
        for (std::size_t l = 0; l < paths.size(); ++l) {
            double a = paths[l].alpha[i];
            std::uint8_t keep = hard_decision(a);
            cands.push_back({paths[l].pm, static_cast<int>(l), keep});
            cands.push_back({paths[l].pm + std::fabs(a), static_cast<int>(l),
                             static_cast<std::uint8_t>(1 - keep)});
        }
        auto chosen = prune_candidates(std::move(cands), list_size);
        paths = materialize(paths, chosen, [i](NodePath& p, std::uint8_t bit) {
            p.beta[i] = bit;
        });
    }
    return paths;
}

namespace {

struct FastState {
    std::vector<int> order;  // positions by ascending |alpha|, ties low index
    bool latched;            // no further splits can survive (case analysis)
};

std::vector<NodePath> decode_rate1_limited(std::vector<NodePath> paths,
                                           int list_size, PmMode mode,
                                           std::size_t max_splits,
                                           long* split_steps,
                                           bool case_a_early_exit) {
    const std::size_t len = paths.empty() ? 0 : paths.front().alpha.size();
    charge_rate1_floor(paths, mode);
    std::vector<FastState> states(paths.size());
    for (std::size_t l = 0; l < paths.size(); ++l) {
        paths[l].beta.assign(len, 0);
        auto& st = states[l];
        st.latched = false;
        st.order.resize(len);
        std::iota(st.order.begin(), st.order.end(), 0);
        const LlrVector& a = paths[l].alpha;
        std::sort(st.order.begin(), st.order.end(), [&a](int x, int y) {
            double mx = std::fabs(a[static_cast<std::size_t>(x)]);
            double my = std::fabs(a[static_cast<std::size_t>(y)]);
            if (mx != my)
                return mx < my;
            return x < y;
        });
    }

    std::size_t rounds = 0;
    for (std::size_t t = 0; t < std::min(max_splits, len); ++t) {
        // Once the cheapest possible penalty of a path already exceeds the
        // gap to the worst surviving metric, none of its split branches can
        // survive a full list; decide its bits by sign from here on.
        if (case_a_early_exit && paths.size() == static_cast<std::size_t>(list_size)) {
            double pm_max = 0.0;
            for (const auto& p : paths)
                pm_max = std::max(pm_max, p.pm);
            bool all_latched = true;
            for (std::size_t l = 0; l < paths.size(); ++l) {
                auto& st = states[l];
                if (!st.latched) {
                    double mag = std::fabs(
                        paths[l].alpha[static_cast<std::size_t>(st.order[t])]);
                    if (mag > pm_max - paths[l].pm)
                        st.latched = true;
                }
                all_latched = all_latched && st.latched;
            }
            if (all_latched)
                break;
        }

        std::vector<SplitCandidate> cands;
        cands.reserve(2 * paths.size());
        bool split_happened = false;
        for (std::size_t l = 0; l < paths.size(); ++l) {
            double a = paths[l].alpha[static_cast<std::size_t>(states[l].order[t])];
            std::uint8_t keep = hard_decision(a);
            cands.push_back({paths[l].pm, static_cast<int>(l), keep});
            if (!states[l].latched) {
                cands.push_back({paths[l].pm + std::fabs(a), static_cast<int>(l),
                                 static_cast<std::uint8_t>(1 - keep)});
                split_happened = true;
            }
        }
        auto chosen = prune_candidates(std::move(cands), list_size);

        std::vector<FastState> next_states;
        next_states.reserve(chosen.size());
        for (const auto& c : chosen)
            next_states.push_back(states[static_cast<std::size_t>(c.parent)]);
        paths = materialize(paths, chosen, [](NodePath&, std::uint8_t) {});
        states = std::move(next_states);
        for (std::size_t l = 0; l < paths.size(); ++l)
            paths[l].beta[static_cast<std::size_t>(states[l].order[t])] =
                chosen[l].bit;
        ++rounds;
        if (split_steps && split_happened)
            ++*split_steps;
    }

    // remaining positions are hard decisions; their cost is already in the pm
    for (std::size_t l = 0; l < paths.size(); ++l) {
        for (std::size_t i = rounds; i < len; ++i) {
            auto pos = static_cast<std::size_t>(states[l].order[i]);
            paths[l].beta[pos] = hard_decision(paths[l].alpha[pos]);
        }
    }
    return paths;
}

}  // namespace

std::vector<NodePath> decode_rate1_fast(std::vector<NodePath> paths,
                                        int list_size, PmMode mode,
                                        long* split_steps,
                                        bool case_a_early_exit) {
    std::size_t cap = list_size > 0 ? static_cast<std::size_t>(list_size - 1) : 0;
    return decode_rate1_limited(std::move(paths), list_size, mode, cap,
                                split_steps, case_a_early_exit);
}

std::vector<NodePath> decode_rate1_capped(std::vector<NodePath> paths,
                                          int list_size, PmMode mode, int cap,
                                          long* split_steps) {
    if (cap < 0)
        throw std::invalid_argument("decode_rate1_capped: cap must be >= 0");
    return decode_rate1_limited(std::move(paths), list_size, mode,
                                static_cast<std::size_t>(cap), split_steps,
                                false);
}

namespace {

class Engine {
  public:
    Engine(const PolarCode& code, const Schedule& schedule,
           const ListDecodeOptions& opt)
        : code_(code), schedule_(schedule), opt_(opt) {}

    std::vector<DecoderPath> run(const LlrVector& llr) {
        DecoderPath first;
        first.pm = 0.0;
        first.active = true;
        first.alpha.resize(static_cast<std::size_t>(code_.n) + 1);
        first.beta.resize(static_cast<std::size_t>(code_.n) + 1);
        for (int d = 0; d <= code_.n; ++d) {
            first.alpha[static_cast<std::size_t>(d)].resize(
                std::size_t{1} << (code_.n - d));
            first.beta[static_cast<std::size_t>(d)].resize(
                std::size_t{1} << (code_.n - d));
        }
        first.alpha[0] = llr;
        first.u_hat.assign(static_cast<std::size_t>(code_.block_length), 0);
        paths_.clear();
        paths_.push_back(std::move(first));
        cursor_ = 0;
        walk();
        return std::move(paths_);
    }

  private:
    double f(double a, double b) const {
        return opt_.pm_mode == PmMode::Exact ? f_exact(a, b) : f_hwf(a, b);
    }

    void walk() {
        const ScheduleNode node = schedule_.nodes[cursor_++];
        switch (node.type) {
            case NodeType::Leaf:
                handle_leaf(node);
                return;
            case NodeType::Rate0:
                handle_rate0(node);
                return;
            case NodeType::Rep:
            case NodeType::Rate1:
                handle_node_decoder(node);
                return;
            case NodeType::Generic:
                break;
        }
        const auto d = static_cast<std::size_t>(node.depth);
        const std::size_t half = static_cast<std::size_t>(node.length) / 2;
        for (auto& p : paths_) {
            const auto& a = p.alpha[d];
            auto& ca = p.alpha[d + 1];
            for (std::size_t i = 0; i < half; ++i)
                ca[i] = f(a[i], a[i + half]);
        }
        walk();
        for (auto& p : paths_) {
            const auto& a = p.alpha[d];
            auto& ca = p.alpha[d + 1];
            auto& b = p.beta[d];
            const auto& cb = p.beta[d + 1];
            for (std::size_t i = 0; i < half; ++i) {
                b[i] = cb[i];  // left partial sums, combined after the right walk
                ca[i] = g_llr(a[i], a[i + half], cb[i]);
            }
        }
        walk();
        for (auto& p : paths_) {
            auto& b = p.beta[d];
            const auto& cb = p.beta[d + 1];
            for (std::size_t i = 0; i < half; ++i) {
                b[i] = static_cast<std::uint8_t>(b[i] ^ cb[i]);
                b[i + half] = cb[i];
            }
        }
    }

    void handle_leaf(const ScheduleNode& node) {
        const auto d = static_cast<std::size_t>(code_.n);
        const auto idx = static_cast<std::size_t>(node.start);
        if (node.frozen_leaf) {
            for (auto& p : paths_) {
                p.pm = pm_update(p.pm, p.alpha[d][0], 0, opt_.pm_mode);
                p.beta[d][0] = 0;
                p.u_hat[idx] = 0;
            }
            return;
        }
        std::vector<SplitCandidate> cands;
        cands.reserve(2 * paths_.size());
        for (std::size_t l = 0; l < paths_.size(); ++l)
            for (std::uint8_t bit = 0; bit < 2; ++bit)
                cands.push_back({pm_update(paths_[l].pm, paths_[l].alpha[d][0],
                                           bit, opt_.pm_mode),
                                 static_cast<int>(l), bit});
        auto chosen = prune_candidates(std::move(cands), opt_.list_size);
        paths_ = materialize(paths_, chosen,
                             [d, idx](DecoderPath& p, std::uint8_t bit) {
                                 p.beta[d][0] = bit;
                                 p.u_hat[idx] = bit;
                             });
    }

    void handle_rate0(const ScheduleNode& node) {
        const auto d = static_cast<std::size_t>(node.depth);
        for (auto& p : paths_) {
            p.pm += rate0_increment(p.alpha[d], opt_.pm_mode);
            std::fill(p.beta[d].begin(), p.beta[d].end(), 0);
            std::fill(p.u_hat.begin() + node.start,
                      p.u_hat.begin() + node.start + node.length, 0);
        }
    }

    void handle_node_decoder(const ScheduleNode& node) {
        const auto d = static_cast<std::size_t>(node.depth);
        std::vector<NodePath> states;
        states.reserve(paths_.size());
        for (std::size_t l = 0; l < paths_.size(); ++l) {
            NodePath np;
            np.pm = paths_[l].pm;
            np.alpha = paths_[l].alpha[d];
            np.parent = static_cast<int>(l);
            states.push_back(std::move(np));
        }

        std::vector<NodePath> out;
        if (node.type == NodeType::Rep) {
            out = decode_rep(std::move(states), opt_.list_size, opt_.pm_mode);
        } else if (opt_.algo == Algo::Sscl) {
            out = decode_rate1_sscl(std::move(states), opt_.list_size,
                                    opt_.pm_mode);
        } else if (opt_.algo == Algo::Capped) {
            out = decode_rate1_capped(std::move(states), opt_.list_size,
                                      opt_.pm_mode, opt_.cap);
        } else {
            out = decode_rate1_fast(std::move(states), opt_.list_size,
                                    opt_.pm_mode, nullptr,
                                    opt_.case_a_early_exit);
        }

        std::vector<int> uses(paths_.size(), 0);
        for (const auto& s : out)
            ++uses[static_cast<std::size_t>(s.parent)];
        std::vector<DecoderPath> next;
        next.reserve(out.size());
        for (auto& s : out) {
            auto idx = static_cast<std::size_t>(s.parent);
            if (--uses[idx] == 0)
                next.push_back(std::move(paths_[idx]));
            else
                next.push_back(paths_[idx]);
            DecoderPath& p = next.back();
            p.pm = s.pm;
            p.beta[d] = s.beta;
            BitVector u = std::move(s.beta);  // source bits via the involution
            polar_transform(u);
            std::copy(u.begin(), u.end(), p.u_hat.begin() + node.start);
        }
        paths_ = std::move(next);
    }

    const PolarCode& code_;
    const Schedule& schedule_;
    const ListDecodeOptions& opt_;
    std::vector<DecoderPath> paths_;
    std::size_t cursor_ = 0;
};

}  // namespace

int select_output(const PathSet& set, const PolarCode& code, bool* crc_pass) {
    if (set.paths.empty())
        throw std::invalid_argument("select_output: empty path set");
    if (crc_pass)
        *crc_pass = true;
    if (!code.crc)
        return 0;
    for (std::size_t k = 0; k < set.paths.size(); ++k) {
        BitVector message = extract_message(code, set.paths[k].u_hat);
        if (crc_check(message, *code.crc))
            return static_cast<int>(k);
    }
    if (crc_pass)
        *crc_pass = false;
    return 0;
}

ListDecoder::ListDecoder(const PolarCode& code, ListDecodeOptions opt)
    : code_(code), opt_(opt) {
    if (opt_.list_size < 1)
        throw std::invalid_argument("ListDecoder: list size must be >= 1");
    schedule_ = opt_.algo == Algo::Scl ? build_flat_schedule(code_)
                                       : build_schedule(code_);
}

DecodeResult ListDecoder::decode(const LlrVector& llr) const {
    if (llr.size() != static_cast<std::size_t>(code_.block_length))
        throw std::invalid_argument("list_decode: LLR length mismatch");

    Engine engine(code_, schedule_, opt_);
    std::vector<DecoderPath> paths = engine.run(llr);

    std::stable_sort(paths.begin(), paths.end(),
                     [](const DecoderPath& a, const DecoderPath& b) {
                         return a.pm < b.pm;
                     });
    for (auto& p : paths)
        p.active = true;

    DecodeResult result;
    result.paths.list_size = opt_.list_size;
    result.paths.paths = std::move(paths);
    result.sorted_pms.reserve(result.paths.paths.size());
    for (const auto& p : result.paths.paths)
        result.sorted_pms.push_back(p.pm);
    result.selected = select_output(result.paths, code_, &result.crc_pass);
    const DecoderPath& chosen =
        result.paths.paths[static_cast<std::size_t>(result.selected)];
    result.u_hat = chosen.u_hat;
    result.x_hat = chosen.beta[0];

    switch (opt_.algo) {
        case Algo::Scl:
            result.time_steps = count_time_steps(schedule_, DecoderKind::Scl,
                                                 opt_.list_size);
            break;
        case Algo::Sscl:
            result.time_steps = count_time_steps(schedule_, DecoderKind::Sscl,
                                                 opt_.list_size);
            break;
        case Algo::FastSscl:
            result.time_steps = count_time_steps(schedule_, DecoderKind::FastSscl,
                                                 opt_.list_size);
            break;
        case Algo::Capped:
            // same cost shape as Fast-SSCL with the budget in place of L-1
            result.time_steps =
                count_time_steps(schedule_, DecoderKind::FastSscl, opt_.cap + 1);
            break;
    }
    return result;
}

DecodeResult list_decode(const PolarCode& code, const LlrVector& llr,
                         const ListDecodeOptions& opt) {
    return ListDecoder(code, opt).decode(llr);
}

}  // namespace polar
