#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faultcover/influence.hpp"

namespace faultcover {

struct CoverStep {
    std::uint32_t sensor;    // selected sensor index
    std::uint64_t gain;      // marginal utility at selection time
    std::uint64_t covered;   // cumulative detection value after this step
};

/// Trace of one greedy cover run. `evaluation_count` is the number of
/// marginal-utility evaluations performed and is part of the contract so
/// the benchmark harness can compare solver work.
struct CoverTrace {
    std::vector<CoverStep> steps;
    std::uint64_t covered_total = 0;
    std::uint64_t evaluation_count = 0;

    std::vector<std::uint32_t> selected() const;
};

/// Number of events detected by at least one sensor in `sensors`.
std::uint64_t detection_value(const DetectionSets& sets,
                              std::span<const std::uint32_t> sensors);

/// Plain greedy minimum set cover: repeatedly take the sensor detecting the
/// most still-undetected events (smallest index on ties) until no sensor
/// adds coverage.
CoverTrace greedy_msc(const DetectionSets& sets);

/// Same selection as greedy_msc, with stale-utility skipping; never performs
/// more marginal evaluations than the plain version.
CoverTrace lazy_greedy_msc(const DetectionSets& sets);

/// Budgeted variant: stops after `budget` sensors (or earlier when no
/// sensor adds coverage).
CoverTrace max_coverage(const DetectionSets& sets, std::uint64_t budget);

}  // namespace faultcover
