#pragma once

#include <span>
#include <string>
#include <vector>

#include "polar/code.hpp"

namespace polar {

enum class NodeType { Rate0, Rate1, Rep, Generic, Leaf };

const char* node_type_name(NodeType t);

struct ScheduleNode {
    NodeType type;
    int start;        // first leaf index covered
    int length;       // leaf span, power of two
    int depth;        // root is 0
    bool frozen_leaf; // meaningful for Leaf nodes only
};

// Decode plan: nodes in depth-first left-to-right order. Pruned schedules
// stop at maximal Rate-0/Rep/Rate-1 subtrees; flat schedules descend to
// every leaf (the plain list-decoding order).
struct Schedule {
    int block_length = 0;
    int info_length = 0;
    std::vector<ScheduleNode> nodes;
    int max_rate1_length = 0;

    std::vector<ScheduleNode> terminals() const;
};

enum class DecoderKind { Sc, Scl, Sscl, FastSscl };

// Rate-0: every position frozen. Rate-1: none frozen. Rep: all frozen but the
// last. Slices of length 1 are Leaf. Throws on non-power-of-two length.
NodeType classify_node(std::span<const std::uint8_t> frozen_slice);

Schedule build_schedule(std::span<const std::uint8_t> frozen_mask, bool prune);
Schedule build_schedule(const PolarCode& code);       // pruned
Schedule build_flat_schedule(const PolarCode& code);  // bit-by-bit order

// Latency model, in time-steps:
//   SC  = 2N - 2                 (every internal node: one f pass, one g pass)
//   SCL = 2N + K - 2             (plus one metric-sort step per info bit)
//   SSCL / Fast-SSCL = 2 per visited internal node, + 1 per Rate-0 node,
//       + 2 per Rep node, + per Rate-1 node its length (SSCL) or
//       min(L-1, length) (Fast-SSCL); stray leaves cost like SCL leaves.
long count_time_steps(const Schedule& schedule, DecoderKind decoder, int L);

struct ReductionRow {
    int list_size;
    long sc;
    long scl;
    long sscl;
    long fast_sscl;
    double fast_vs_sscl_pct;  // time-steps saved by Fast-SSCL over SSCL
    double fast_vs_scl_pct;
};

std::vector<ReductionRow> reduction_report(const PolarCode& code,
                                           const std::vector<int>& list_sizes);

// Indented text rendering of the pruned tree.
std::string format_tree(const Schedule& schedule);

}  // namespace polar
