#include "faultcover/testcover.hpp"

#include <algorithm>
#include <numeric>

namespace faultcover {

std::vector<std::uint32_t> PlacementResult::selected() const {
    std::vector<std::uint32_t> out;
    out.reserve(steps.size());
    for (const PlacementStep& s : steps) out.push_back(s.sensor);
    return out;
}

std::vector<EventPair> pair_subsets(std::span<const std::uint32_t> events) {
    std::vector<std::uint32_t> sorted(events.begin(), events.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<EventPair> pairs;
    if (sorted.size() >= 2) pairs.reserve(sorted.size() * (sorted.size() - 1) / 2);
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            pairs.emplace_back(sorted[i], sorted[j]);
    return pairs;
}

std::vector<EventPair> pairs_split_by(const BitSet& members,
                                      std::span<const EventPair> pairs) {
    std::vector<EventPair> out;
    for (const EventPair& p : pairs)
        if (members.test(p.first) != members.test(p.second)) out.push_back(p);
    return out;
}

std::vector<EventPair> pairs_split_by(std::span<const std::uint32_t> members,
                                      std::size_t universe,
                                      std::span<const EventPair> pairs) {
    BitSet set(universe);
    for (std::uint32_t e : members) set.set(e);
    return pairs_split_by(set, pairs);
}

PairwiseInstance transform_mtc_to_msc(const InfluenceMatrix& matrix,
                                      std::uint64_t cell_guard) {
    const std::uint64_t n = matrix.event_count();
    const std::uint64_t m = matrix.sensor_count();
    const std::uint64_t pair_count = n * (n - (n > 0 ? 1 : 0)) / 2;
    if (pair_count != 0 && m > cell_guard / pair_count)
        throw SizeGuardError("pairwise instance needs " + std::to_string(m) + " x " +
                             std::to_string(pair_count) +
                             " cells, above the configured cap of " +
                             std::to_string(cell_guard) + "; use augmented_greedy instead");

    PairwiseInstance instance;
    instance.pair_events.reserve(pair_count);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) instance.pair_events.emplace_back(i, j);

    instance.sets.universe = pair_count;
    instance.sets.sets.reserve(m);
    for (std::size_t v = 0; v < m; ++v) {
        const BitSet& column = matrix.column(v);
        BitSet separated(pair_count);
        std::size_t p = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            const bool ci = column.test(i);
            for (std::uint32_t j = i + 1; j < n; ++j, ++p)
                if (ci != column.test(j)) separated.set(p);
        }
        instance.sets.sets.push_back(std::move(separated));
    }
    instance.transform_cells = m * pair_count;
    return instance;
}

namespace {

std::uint64_t choose2(std::uint64_t k) { return k * (k - (k > 0 ? 1 : 0)) / 2; }

}  // namespace

std::uint64_t identification_value(const InfluenceMatrix& matrix,
                                   std::span<const std::uint32_t> sensors) {
    for (std::uint32_t s : sensors)
        if (s >= matrix.sensor_count())
            throw std::out_of_range("sensor index " + std::to_string(s) + " out of range");
    const std::uint64_t n = matrix.event_count();
    if (n < 2) return 0;

    // Radix partition of the rows: refine the event groups column by column;
    // events still grouped at the end share their whole restricted
    // signature. Linear in n per chosen sensor, no pair enumeration.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::uint32_t> ones(n);
    std::vector<std::size_t> starts = {0};
    for (std::uint32_t s : sensors) {
        if (starts.size() == n) break;  // every group is a singleton already
        const BitSet& column = matrix.column(s);
        std::vector<std::size_t> refined;
        refined.reserve(starts.size() * 2);
        for (std::size_t g = 0; g < starts.size(); ++g) {
            const std::size_t begin = starts[g];
            const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : n;
            std::size_t zero_cursor = begin;
            std::size_t one_count = 0;
            for (std::size_t i = begin; i < end; ++i) {
                if (column.test(order[i]))
                    ones[one_count++] = order[i];
                else
                    order[zero_cursor++] = order[i];
            }
            refined.push_back(begin);
            if (zero_cursor > begin && one_count > 0) refined.push_back(zero_cursor);
            for (std::size_t i = 0; i < one_count; ++i) order[zero_cursor + i] = ones[i];
        }
        starts = std::move(refined);
    }

    std::uint64_t same_pairs = 0;
    for (std::size_t g = 0; g < starts.size(); ++g) {
        const std::size_t end = g + 1 < starts.size() ? starts[g + 1] : n;
        same_pairs += choose2(end - starts[g]);
    }
    return choose2(n) - same_pairs;
}

PlacementResult tlg_solve(const InfluenceMatrix& matrix, std::uint64_t cell_guard) {
    const PairwiseInstance instance = transform_mtc_to_msc(matrix, cell_guard);
    const CoverTrace trace = lazy_greedy_msc(instance.sets);

    PlacementResult result;
    result.pair_universe = instance.sets.universe;
    result.separated_total = trace.covered_total;
    result.evaluation_count = trace.evaluation_count;
    result.transform_cells = instance.transform_cells;
    result.steps.reserve(trace.steps.size());
    for (const CoverStep& s : trace.steps) {
        const double normalized =
            result.pair_universe == 0
                ? 1.0
                : static_cast<double>(s.covered) / static_cast<double>(result.pair_universe);
        result.steps.push_back({s.sensor, s.gain, s.covered, normalized});
    }
    return result;
}

PlacementResult augmented_greedy(const InfluenceMatrix& matrix, const AgOptions& options) {
    const std::size_t n = matrix.event_count();
    const std::size_t m = matrix.sensor_count();

    PlacementResult result;
    result.pair_universe = choose2(n);

    BitSet covered(n);
    std::vector<std::vector<EventPair>> groups;  // one per selected sensor

    for (;;) {
        AgIterationRecord record;
        record.remaining = n - covered.count();
        record.scores.reserve(m);

        std::uint64_t best_utility = 0;
        std::size_t best = m;
        for (std::size_t i = 0; i < m; ++i) {
            const BitSet& column = matrix.column(i);
            const std::uint64_t fresh = column.count_andnot(covered);
            const std::uint64_t cross = fresh * (record.remaining - fresh);
            std::uint64_t split = 0;
            for (const auto& group : groups) {
                for (const EventPair& p : group)
                    split += column.test(p.first) != column.test(p.second);
                record.pair_comparisons += group.size();
            }
            AgSensorScore score;
            score.sensor = static_cast<std::uint32_t>(i);
            score.fresh_events = fresh;
            score.cross_pairs = cross;
            score.split_pairs = split;
            score.utility = cross + split;
            if (options.record_sets) {
                column.for_each_set([&](std::size_t e) {
                    if (covered.test(e))
                        score.overlap_set.push_back(static_cast<std::uint32_t>(e));
                    else
                        score.fresh_set.push_back(static_cast<std::uint32_t>(e));
                });
            }
            if (score.utility > best_utility) {
                best_utility = score.utility;
                best = i;
            }
            record.scores.push_back(std::move(score));
        }

        if (best == m || best_utility == 0) {
            if (options.record_sets) record.groups = groups;
            result.trace.push_back(std::move(record));
            break;
        }

        const BitSet& column = matrix.column(best);
        record.chosen = static_cast<std::uint32_t>(best);
        record.chosen_utility = best_utility;

        // New group: every pair of freshly covered events starts unseparated.
        std::vector<std::uint32_t> fresh_events;
        std::vector<std::uint32_t> overlap_events;
        column.for_each_set([&](std::size_t e) {
            if (covered.test(e))
                overlap_events.push_back(static_cast<std::uint32_t>(e));
            else
                fresh_events.push_back(static_cast<std::uint32_t>(e));
        });

        // Drop from the older groups every pair the chosen sensor splits.
        for (auto& group : groups) {
            record.pair_comparisons += group.size();
            std::erase_if(group, [&](const EventPair& p) {
                return column.test(p.first) != column.test(p.second);
            });
        }
        groups.push_back(pair_subsets(fresh_events));
        covered |= column;

        result.separated_total += best_utility;
        const double normalized =
            result.pair_universe == 0
                ? 1.0
                : static_cast<double>(result.separated_total) /
                      static_cast<double>(result.pair_universe);
        result.steps.push_back({static_cast<std::uint32_t>(best), best_utility,
                                result.separated_total, normalized});

        if (options.record_sets) {
            record.chosen_fresh = fresh_events;
            record.chosen_overlap = overlap_events;
            record.groups = groups;
        }
        result.trace.push_back(std::move(record));
    }

    for (const AgIterationRecord& r : result.trace) result.comparison_count += r.pair_comparisons;
    return result;
}

}  // namespace faultcover
