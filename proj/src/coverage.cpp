#include "faultcover/coverage.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace faultcover {

std::vector<std::uint32_t> CoverTrace::selected() const {
    std::vector<std::uint32_t> out;
    out.reserve(steps.size());
    for (const CoverStep& s : steps) out.push_back(s.sensor);
    return out;
}

std::uint64_t detection_value(const DetectionSets& sets,
                              std::span<const std::uint32_t> sensors) {
    BitSet covered(sets.universe);
    for (std::uint32_t i : sensors) {
        if (i >= sets.sets.size())
            throw std::out_of_range("sensor index " + std::to_string(i) + " out of range");
        covered |= sets.sets[i];
    }
    return covered.count();
}

CoverTrace greedy_msc(const DetectionSets& sets) {
    return max_coverage(sets, std::numeric_limits<std::uint64_t>::max());
}

CoverTrace max_coverage(const DetectionSets& sets, std::uint64_t budget) {
    CoverTrace trace;
    const std::size_t m = sets.sets.size();
    BitSet covered(sets.universe);
    std::vector<bool> selected(m, false);

    while (trace.steps.size() < budget) {
        std::uint64_t best_gain = 0;
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (selected[i]) continue;
            const std::uint64_t gain = sets.sets[i].count_andnot(covered);
            ++trace.evaluation_count;
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        if (best == m || best_gain == 0) break;
        selected[best] = true;
        covered |= sets.sets[best];
        trace.covered_total = covered.count();
        trace.steps.push_back({static_cast<std::uint32_t>(best), best_gain, trace.covered_total});
    }
    return trace;
}

namespace {

struct HeapEntry {
    std::uint64_t gain;
    std::uint32_t sensor;
    std::uint32_t round;  // selection round the gain was computed in
};

// Max by gain, smallest sensor index breaking ties: matches the plain
// greedy argmax exactly.
struct HeapOrder {
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.gain != b.gain) return a.gain < b.gain;
        return a.sensor > b.sensor;
    }
};

}  // namespace

CoverTrace lazy_greedy_msc(const DetectionSets& sets) {
    CoverTrace trace;
    const std::size_t m = sets.sets.size();
    BitSet covered(sets.universe);

    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> queue;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t gain = sets.sets[i].count();
        ++trace.evaluation_count;
        queue.push({gain, static_cast<std::uint32_t>(i), 0});
    }

    std::uint32_t round = 0;
    while (!queue.empty()) {
        HeapEntry top = queue.top();
        queue.pop();
        if (top.round != round) {
            top.gain = sets.sets[top.sensor].count_andnot(covered);
            ++trace.evaluation_count;
            top.round = round;
            queue.push(top);
            continue;
        }
        if (top.gain == 0) break;
        covered |= sets.sets[top.sensor];
        trace.covered_total = covered.count();
        trace.steps.push_back({top.sensor, top.gain, trace.covered_total});
        ++round;
    }
    return trace;
}

}  // namespace faultcover
