#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faultcover/influence.hpp"

namespace faultcover {

/// Events sharing one restricted signature under the chosen sensor set.
struct LocalizationGroup {
    std::vector<std::uint64_t> signature;  // packed bits, one per chosen sensor
    std::vector<std::uint32_t> events;
};

/// Partition of all events by restricted-signature equality. Groups appear
/// in first-occurrence order of their earliest event.
struct LocalizationPartition {
    std::vector<LocalizationGroup> groups;
    std::size_t signature_bits = 0;

    std::uint64_t largest_group() const;
};

/// Group events by exact equality of their rows restricted to `sensors`.
/// The all-zero (nothing detected) signature forms a group like any other;
/// pass include_undetected = false to drop it instead.
LocalizationPartition localization_partition(const InfluenceMatrix& matrix,
                                             std::span<const std::uint32_t> sensors,
                                             bool include_undetected = true);

struct ScoreReport {
    double detection_score = 0.0;        // detected / events
    double identification_score = 0.0;   // separated pairs / C(n,2)
    double localization_score = 0.0;     // groups / events
    std::uint64_t worst_group_size = 0;  // largest localization group
    double worst_group_normalized = 0.0; // worst_group_size / events
    std::size_t sensor_count = 0;

    // Raw counts behind the ratios.
    std::uint64_t detected = 0;
    std::uint64_t separated_pairs = 0;
    std::uint64_t pair_universe = 0;
    std::uint64_t group_count = 0;
    std::uint64_t event_count = 0;
};

/// All four placement scores for one sensor set. Requires at least one
/// event. With a single event there are no pairs to separate and the
/// identification score reports 1.
ScoreReport score_report(const InfluenceMatrix& matrix,
                         std::span<const std::uint32_t> sensors,
                         bool include_undetected = true);

}  // namespace faultcover
