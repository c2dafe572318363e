#include "faultcover/oracle.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "faultcover/coverage.hpp"
#include "faultcover/testcover.hpp"

namespace faultcover {

namespace {

// Visit all k-subsets of {0..m-1} in lexicographic order until the visitor
// returns true; reports whether any subset was accepted.
bool first_subset(std::size_t m, std::size_t k,
                  const std::function<bool(std::span<const std::uint32_t>)>& accept,
                  std::vector<std::uint32_t>& witness) {
    std::vector<std::uint32_t> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    if (k > m) return false;
    for (;;) {
        if (accept(subset)) {
            witness = subset;
            return true;
        }
        // Advance to the next combination.
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == m - k + i - 1) --i;
        if (i == 0) return false;
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

std::vector<std::uint32_t> minimum_subset(
    std::size_t m, std::size_t guard, const char* what,
    const std::function<bool(std::span<const std::uint32_t>)>& accept) {
    if (m > guard)
        throw SizeGuardError(std::string(what) + ": " + std::to_string(m) +
                             " sensors exceed the exhaustive-search guard of " +
                             std::to_string(guard));
    std::vector<std::uint32_t> witness;
    for (std::size_t k = 0; k <= m; ++k)
        if (first_subset(m, k, accept, witness)) return witness;
    return witness;  // unreachable: k = m always accepts
}

}  // namespace

std::vector<std::uint32_t> exact_msc(const DetectionSets& sets, std::size_t max_sensors_guard) {
    std::vector<std::uint32_t> all(sets.sets.size());
    std::iota(all.begin(), all.end(), 0);
    const std::uint64_t target = detection_value(sets, all);
    return minimum_subset(sets.sets.size(), max_sensors_guard, "exact_msc",
                          [&](std::span<const std::uint32_t> subset) {
                              return detection_value(sets, subset) == target;
                          });
}

std::vector<std::uint32_t> exact_mtc(const InfluenceMatrix& matrix,
                                     std::size_t max_sensors_guard) {
    std::vector<std::uint32_t> all(matrix.sensor_count());
    std::iota(all.begin(), all.end(), 0);
    const std::uint64_t target = brute_identification_value(matrix, all);
    return minimum_subset(matrix.sensor_count(), max_sensors_guard, "exact_mtc",
                          [&](std::span<const std::uint32_t> subset) {
                              return brute_identification_value(matrix, subset) == target;
                          });
}

std::uint64_t brute_identification_value(const InfluenceMatrix& matrix,
                                         std::span<const std::uint32_t> sensors) {
    for (std::uint32_t s : sensors)
        if (s >= matrix.sensor_count())
            throw std::out_of_range("sensor index " + std::to_string(s) + " out of range");
    const std::size_t n = matrix.event_count();
    std::uint64_t separated = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::uint32_t s : sensors) {
                if (matrix.cell(i, s) != matrix.cell(j, s)) {
                    ++separated;
                    break;
                }
            }
        }
    }
    return separated;
}

}  // namespace faultcover
