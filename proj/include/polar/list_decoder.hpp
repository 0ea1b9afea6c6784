#pragma once

#include <optional>
#include <vector>

#include "polar/code.hpp"
#include "polar/kernels.hpp"
#include "polar/schedule.hpp"
#include "polar/types.hpp"

namespace polar {

enum class Algo { Scl, Sscl, FastSscl, Capped };

// One list-decoding hypothesis over the full tree: per-depth LLR and
// partial-sum memories plus the decided source bits.
struct DecoderPath {
    double pm = 0.0;
    std::vector<LlrVector> alpha;
    std::vector<BitVector> beta;
    BitVector u_hat;
    bool active = false;
};

struct PathSet {
    std::vector<DecoderPath> paths;  // sorted by (pm, slot) when returned
    int list_size = 1;
};

// A candidate produced by splitting path `parent` with decision `bit`.
// Pruning keeps the list_size smallest under the total order
// (pm, parent, bit), bit 0 first.
struct SplitCandidate {
    double pm;
    int parent;
    std::uint8_t bit;
};

std::vector<SplitCandidate> prune_candidates(std::vector<SplitCandidate> cands,
                                             int list_size);

// Node-local view of a path used by the constituent-code decoders: the path
// metric, the LLRs at the top of the node, and the codeword-domain bit
// decisions for the node's span. `parent` tracks which entering path a
// survivor descends from.
struct NodePath {
    double pm = 0.0;
    LlrVector alpha;
    BitVector beta;
    int parent = 0;
};

// All-frozen node: no splits, penalties for the all-zero decision.
std::vector<NodePath> decode_rate0(std::vector<NodePath> paths, PmMode mode);

// Repetition node: one split over the two constant codewords.
std::vector<NodePath> decode_rep(std::vector<NodePath> paths, int list_size,
                                 PmMode mode);

// All-information node, one split per position in natural order.
std::vector<NodePath> decode_rate1_sscl(std::vector<NodePath> paths,
                                        int list_size, PmMode mode);

// All-information node with splits capped at min(list_size - 1, length):
// each path splits on its own least reliable undecided position, the rest
// are hard decisions. Survivors match decode_rate1_sscl. `split_steps`
// accumulates the number of splitting rounds actually performed. The
// early-exit flag stops splitting a path once any penalty would exceed the
// worst surviving metric; it never changes the outcome.
std::vector<NodePath> decode_rate1_fast(std::vector<NodePath> paths,
                                        int list_size, PmMode mode,
                                        long* split_steps = nullptr,
                                        bool case_a_early_exit = true);

// Same procedure with an explicit split budget (the empirical two-split rule
// is cap = 2). Not equivalent to SCL when cap < min(list_size - 1, length).
std::vector<NodePath> decode_rate1_capped(std::vector<NodePath> paths,
                                          int list_size, PmMode mode, int cap,
                                          long* split_steps = nullptr);

struct ListDecodeOptions {
    Algo algo = Algo::FastSscl;
    int list_size = 1;
    PmMode pm_mode = PmMode::Exact;
    int cap = 2;                     // split budget for Algo::Capped
    bool case_a_early_exit = true;
};

struct DecodeResult {
    BitVector u_hat;                 // selected path's source bits
    BitVector x_hat;                 // its re-encoded codeword
    std::vector<double> sorted_pms;  // final metrics, ascending
    int selected = 0;                // index into paths
    bool crc_pass = true;            // false when a CRC is set and nobody passed
    long time_steps = 0;
    PathSet paths;
};

// Lowest-metric path, preferring ones whose message passes the code's CRC;
// falls back to the overall lowest metric when none passes. The set must be
// sorted and non-empty.
int select_output(const PathSet& set, const PolarCode& code,
                  bool* crc_pass = nullptr);

// Reusable decoder: immutable after construction, safe to share across
// threads; every decode() call keeps its working state on its own stack.
class ListDecoder {
  public:
    ListDecoder(const PolarCode& code, ListDecodeOptions opt);

    DecodeResult decode(const LlrVector& llr) const;
    const Schedule& schedule() const { return schedule_; }
    const ListDecodeOptions& options() const { return opt_; }

  private:
    PolarCode code_;
    Schedule schedule_;
    ListDecodeOptions opt_;
};

DecodeResult list_decode(const PolarCode& code, const LlrVector& llr,
                         const ListDecodeOptions& opt);

}  // namespace polar
