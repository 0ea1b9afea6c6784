#include "polar/schedule.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polar {

const char* node_type_name(NodeType t) {
    switch (t) {
        case NodeType::Rate0: return "rate0";
        case NodeType::Rate1: return "rate1";
        case NodeType::Rep: return "rep";
        case NodeType::Generic: return "generic";
        case NodeType::Leaf: return "leaf";
    }
    return "?";
}

std::vector<ScheduleNode> Schedule::terminals() const {
    std::vector<ScheduleNode> out;
    for (const auto& n : nodes)
        if (n.type != NodeType::Generic)
            out.push_back(n);
    return out;
}

NodeType classify_node(std::span<const std::uint8_t> frozen_slice) {
    const std::size_t len = frozen_slice.size();
    if (len == 0 || (len & (len - 1)) != 0)
        throw std::invalid_argument("classify_node: length must be a power of two");
    if (len == 1)
        return NodeType::Leaf;
    bool all_frozen = true, none_frozen = true;
    for (std::uint8_t f : frozen_slice) {
        if (f) none_frozen = false;
        else all_frozen = false;
    }
    if (all_frozen)
        return NodeType::Rate0;
    if (none_frozen)
        return NodeType::Rate1;
    bool rep = !frozen_slice[len - 1];
    for (std::size_t i = 0; i + 1 < len && rep; ++i)
        if (!frozen_slice[i])
            rep = false;
    return rep ? NodeType::Rep : NodeType::Generic;
}

namespace {

void descend(std::span<const std::uint8_t> mask, int start, int length,
             int depth, bool prune, std::vector<ScheduleNode>& nodes) {
    auto slice = mask.subspan(static_cast<std::size_t>(start),
                              static_cast<std::size_t>(length));
    NodeType type = classify_node(slice);
    if (type == NodeType::Leaf) {
        nodes.push_back({type, start, length, depth, slice[0] != 0});
        return;
    }
    if (prune && type != NodeType::Generic) {
        nodes.push_back({type, start, length, depth, false});
        return;
    }
    nodes.push_back({NodeType::Generic, start, length, depth, false});
    descend(mask, start, length / 2, depth + 1, prune, nodes);
    descend(mask, start + length / 2, length / 2, depth + 1, prune, nodes);
}

}  // namespace

Schedule build_schedule(std::span<const std::uint8_t> frozen_mask, bool prune) {
    Schedule s;
    s.block_length = static_cast<int>(frozen_mask.size());
    s.info_length = 0;
    for (std::uint8_t f : frozen_mask)
        if (!f)
            ++s.info_length;
    descend(frozen_mask, 0, s.block_length, 0, prune, s.nodes);
    for (const auto& n : s.nodes)
        if (n.type == NodeType::Rate1)
            s.max_rate1_length = std::max(s.max_rate1_length, n.length);
    return s;
}

Schedule build_schedule(const PolarCode& code) {
    return build_schedule(std::span(code.frozen), true);
}

Schedule build_flat_schedule(const PolarCode& code) {
    return build_schedule(std::span(code.frozen), false);
}

long count_time_steps(const Schedule& schedule, DecoderKind decoder, int L) {
    if (L < 1)
        throw std::invalid_argument("count_time_steps: list size must be >= 1");
    const long N = schedule.block_length;
    const long K = schedule.info_length;
    switch (decoder) {
        case DecoderKind::Sc:
            return 2 * N - 2;
        case DecoderKind::Scl:
            return 2 * N + K - 2;
        default:
            break;
    }
    long total = 0;
    for (const auto& node : schedule.nodes) {
        switch (node.type) {
            case NodeType::Generic:
                total += 2;
                break;
            case NodeType::Rate0:
                total += 1;
                break;
            case NodeType::Rep:
                total += 2;
                break;
            case NodeType::Rate1:
                total += decoder == DecoderKind::Sscl
                             ? node.length
                             : std::min<long>(L - 1, node.length);
                break;
            case NodeType::Leaf:
                total += node.frozen_leaf ? 0 : 1;
                break;
        }
    }
    return total;
}

std::vector<ReductionRow> reduction_report(const PolarCode& code,
                                           const std::vector<int>& list_sizes) {
    Schedule s = build_schedule(code);
    std::vector<ReductionRow> rows;
    rows.reserve(list_sizes.size());
    for (int L : list_sizes) {
        ReductionRow row;
        row.list_size = L;
        row.sc = count_time_steps(s, DecoderKind::Sc, 1);
        row.scl = count_time_steps(s, DecoderKind::Scl, L);
        row.sscl = count_time_steps(s, DecoderKind::Sscl, L);
        row.fast_sscl = count_time_steps(s, DecoderKind::FastSscl, L);
        row.fast_vs_sscl_pct =
            100.0 * (1.0 - static_cast<double>(row.fast_sscl) /
                               static_cast<double>(row.sscl));
        row.fast_vs_scl_pct =
            100.0 * (1.0 - static_cast<double>(row.fast_sscl) /
                               static_cast<double>(row.scl));
        rows.push_back(row);
    }
    return rows;
}

std::string format_tree(const Schedule& schedule) {
    std::ostringstream out;
    for (const auto& node : schedule.nodes) {
        for (int i = 0; i < node.depth; ++i)
            out << "  ";
        out << node_type_name(node.type) << " [" << node.start << ", "
            << node.start + node.length << ")";
        if (node.type == NodeType::Leaf)
            out << (node.frozen_leaf ? " frozen" : " info");
        out << '\n';
    }
    return out.str();
}

}  // namespace polar
