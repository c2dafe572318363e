#include "faultcover/metrics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "faultcover/coverage.hpp"
#include "faultcover/testcover.hpp"

namespace faultcover {

std::uint64_t LocalizationPartition::largest_group() const {
    std::uint64_t largest = 0;
    for (const auto& g : groups) largest = std::max<std::uint64_t>(largest, g.events.size());
    return largest;
}

LocalizationPartition localization_partition(const InfluenceMatrix& matrix,
                                             std::span<const std::uint32_t> sensors,
                                             bool include_undetected) {
    for (std::uint32_t s : sensors)
        if (s >= matrix.sensor_count())
            throw std::out_of_range("sensor index " + std::to_string(s) + " out of range");

    LocalizationPartition partition;
    partition.signature_bits = sensors.size();
    const std::size_t stride = std::max<std::size_t>((sensors.size() + 63) / 64, 1);

    std::map<std::vector<std::uint64_t>, std::size_t> group_of;
    for (std::size_t event = 0; event < matrix.event_count(); ++event) {
        std::vector<std::uint64_t> signature(stride, 0);
        for (std::size_t k = 0; k < sensors.size(); ++k)
            if (matrix.cell(event, sensors[k]))
                signature[k / 64] |= std::uint64_t(1) << (k % 64);
        auto [it, inserted] = group_of.try_emplace(signature, partition.groups.size());
        if (inserted) partition.groups.push_back({signature, {}});
        partition.groups[it->second].events.push_back(static_cast<std::uint32_t>(event));
    }

    if (!include_undetected) {
        const std::vector<std::uint64_t> zero(stride, 0);
        std::erase_if(partition.groups,
                      [&](const LocalizationGroup& g) { return g.signature == zero; });
    }
    return partition;
}

ScoreReport score_report(const InfluenceMatrix& matrix,
                         std::span<const std::uint32_t> sensors,
                         bool include_undetected) {
    const std::uint64_t n = matrix.event_count();
    if (n == 0) throw std::invalid_argument("score_report requires at least one event");

    ScoreReport report;
    report.sensor_count = sensors.size();
    report.event_count = n;
    report.pair_universe = n * (n - 1) / 2;

    const DetectionSets sets = detection_sets(matrix);
    report.detected = detection_value(sets, sensors);
    report.separated_pairs = identification_value(matrix, sensors);

    const LocalizationPartition partition =
        localization_partition(matrix, sensors, include_undetected);
    report.group_count = partition.groups.size();
    report.worst_group_size = partition.largest_group();

    report.detection_score = static_cast<double>(report.detected) / static_cast<double>(n);
    report.identification_score =
        report.pair_universe == 0
            ? 1.0
            : static_cast<double>(report.separated_pairs) /
                  static_cast<double>(report.pair_universe);
    report.localization_score =
        static_cast<double>(report.group_count) / static_cast<double>(n);
    report.worst_group_normalized =
        static_cast<double>(report.worst_group_size) / static_cast<double>(n);
    return report;
}

}  // namespace faultcover
