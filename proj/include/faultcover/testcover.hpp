#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultcover/coverage.hpp"
#include "faultcover/influence.hpp"

namespace faultcover {

/// Raised when an operation would materialize more state than its
/// configured cap allows. Callers are expected to fall back to the
/// transform-free solver.
struct SizeGuardError : std::runtime_error {
    explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Unordered event pair, stored with first < second.
using EventPair = std::pair<std::uint32_t, std::uint32_t>;

/// All 2-element subsets of `events`, in lexicographic order.
std::vector<EventPair> pair_subsets(std::span<const std::uint32_t> events);

/// The pairs in `pairs` having exactly one endpoint in `members`.
std::vector<EventPair> pairs_split_by(const BitSet& members,
                                      std::span<const EventPair> pairs);
std::vector<EventPair> pairs_split_by(std::span<const std::uint32_t> members,
                                      std::size_t universe,
                                      std::span<const EventPair> pairs);

/// The identification problem rewritten as set cover: one element per
/// unordered event pair, and per-sensor sets holding the pairs the sensor
/// separates (detects exactly one of the two events).
struct PairwiseInstance {
    std::vector<EventPair> pair_events;  // lexicographic, size n(n-1)/2
    DetectionSets sets;                  // over the pair universe
    std::uint64_t transform_cells = 0;   // cells evaluated building the sets
};

inline constexpr std::uint64_t kDefaultPairCellGuard = std::uint64_t(1) << 31;

/// Materializes the pairwise instance. Memory grows with m*n(n-1)/2 bits, so
/// the cell count is checked against `cell_guard` first; SizeGuardError
/// signals the caller to use augmented_greedy instead.
PairwiseInstance transform_mtc_to_msc(const InfluenceMatrix& matrix,
                                      std::uint64_t cell_guard = kDefaultPairCellGuard);

/// Number of event pairs the sensor set separates, computed by grouping
/// rows on their restricted signatures rather than enumerating pairs:
/// C(n,2) minus C(|g|,2) over every signature group g.
std::uint64_t identification_value(const InfluenceMatrix& matrix,
                                   std::span<const std::uint32_t> sensors);

struct PlacementStep {
    std::uint32_t sensor;
    std::uint64_t utility;     // pairs newly separated by this step
    std::uint64_t separated;   // cumulative pairs separated
    double normalized;         // separated / C(n,2)
};

/// Per-candidate utility breakdown inside one augmented-greedy iteration.
struct AgSensorScore {
    std::uint32_t sensor = 0;
    std::uint64_t fresh_events = 0;  // events detected outside the covered set
    std::uint64_t cross_pairs = 0;   // fresh_events * (remaining - fresh_events)
    std::uint64_t split_pairs = 0;   // unseparated covered pairs this sensor splits
    std::uint64_t utility = 0;       // cross_pairs + split_pairs
    // Filled only when AgOptions::record_sets is on:
    std::vector<std::uint32_t> fresh_set;    // the events behind fresh_events
    std::vector<std::uint32_t> overlap_set;  // covered events this sensor also sees
};

struct AgIterationRecord {
    std::uint64_t remaining = 0;  // events not yet detected at iteration start
    std::vector<AgSensorScore> scores;
    std::optional<std::uint32_t> chosen;  // empty on the terminating iteration
    std::uint64_t chosen_utility = 0;
    std::uint64_t pair_comparisons = 0;   // pairs examined this iteration
    // Filled only when AgOptions::record_sets is on:
    std::vector<std::uint32_t> chosen_fresh;     // newly covered events
    std::vector<std::uint32_t> chosen_overlap;   // already-covered events seen again
    std::vector<std::vector<EventPair>> groups;  // unseparated pair groups after update
};

struct PlacementResult {
    std::vector<PlacementStep> steps;
    std::uint64_t separated_total = 0;
    std::uint64_t pair_universe = 0;      // C(n,2)
    std::uint64_t evaluation_count = 0;   // marginal evaluations (transform path)
    std::uint64_t transform_cells = 0;    // cells built by the transform
    std::uint64_t comparison_count = 0;   // pairs examined (augmented path)
    std::vector<AgIterationRecord> trace; // augmented path only

    std::vector<std::uint32_t> selected() const;
};

/// Transform-then-solve: materialize the pairwise instance and run lazy
/// greedy set cover on it. Subject to the transform size guard.
PlacementResult tlg_solve(const InfluenceMatrix& matrix,
                          std::uint64_t cell_guard = kDefaultPairCellGuard);

struct AgOptions {
    bool record_sets = false;  // keep per-iteration event/pair sets in the trace
};

/// Direct greedy test cover. Scores each candidate as the cross-cut pairs it
/// separates among still-undetected events plus the pairs it splits inside
/// the groups of covered-but-unseparated events, so the pairwise universe is
/// never materialized. Produces the same selection, order and per-step
/// utilities as tlg_solve.
PlacementResult augmented_greedy(const InfluenceMatrix& matrix, const AgOptions& options = {});

}  // namespace faultcover
