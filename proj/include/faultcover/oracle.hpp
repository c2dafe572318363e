#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faultcover/influence.hpp"

namespace faultcover {

/// Exhaustive solvers for small instances. Test infrastructure: the guards
/// fail loudly instead of silently degrading, and subsets are enumerated in
/// increasing-cardinality lexicographic order so the returned witness is the
/// canonical (lexicographically smallest) optimum.

/// Smallest sensor set matching the detection value of all sensors.
/// SizeGuardError above `max_sensors_guard` sensors.
std::vector<std::uint32_t> exact_msc(const DetectionSets& sets,
                                     std::size_t max_sensors_guard = 24);

/// Smallest sensor set matching the identification value of all sensors.
std::vector<std::uint32_t> exact_mtc(const InfluenceMatrix& matrix,
                                     std::size_t max_sensors_guard = 24);

/// Pair separation count by direct double loop over all event pairs;
/// the independent check for identification_value.
std::uint64_t brute_identification_value(const InfluenceMatrix& matrix,
                                         std::span<const std::uint32_t> sensors);

}  // namespace faultcover
