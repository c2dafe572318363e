#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "faultcover/bitset.hpp"
#include "faultcover/network.hpp"

namespace faultcover {

/// Boolean event-by-sensor matrix. Row j is the fault signature of event j:
/// cell (j,i) says whether sensor i reacts to that event. Cells are stored
/// bit-packed per column because the cover solvers work column-wise.
/// Immutable in practice once filled; shareable across threads.
class InfluenceMatrix {
public:
    InfluenceMatrix() = default;
    /// All-zero matrix over the given id lists; throws on duplicate ids.
    InfluenceMatrix(std::vector<std::string> event_ids, std::vector<std::string> sensor_ids);

    std::size_t event_count() const { return event_ids_.size(); }
    std::size_t sensor_count() const { return sensor_ids_.size(); }

    bool cell(std::size_t event, std::size_t sensor) const {
        return columns_[sensor].test(event);
    }
    void set_cell(std::size_t event, std::size_t sensor) { columns_[sensor].set(event); }

    const BitSet& column(std::size_t sensor) const { return columns_[sensor]; }
    const std::vector<std::string>& event_ids() const { return event_ids_; }
    const std::vector<std::string>& sensor_ids() const { return sensor_ids_; }

    std::size_t sensor_index(const std::string& id) const;  // throws on unknown id
    std::size_t event_index(const std::string& id) const;

    friend bool operator==(const InfluenceMatrix&, const InfluenceMatrix&) = default;

private:
    std::vector<std::string> event_ids_;
    std::vector<std::string> sensor_ids_;
    std::vector<BitSet> columns_;
};

/// Per-sensor sets of detected events over a universe of `universe` events.
/// sets[i] is exactly column i of the matrix it was derived from.
struct DetectionSets {
    std::vector<BitSet> sets;
    std::size_t universe = 0;
};

/// Distance-threshold sensing: cell (j,i) = 1 iff the shortest-path distance
/// from event j to sensor node i is <= epsilon_m (ties count as detected).
/// Rows follow event_locations order, columns the sensor_nodes order.
/// Honors FAULTCOVER_THREADS for the per-event distance sweeps.
InfluenceMatrix build_influence_matrix(const Network& net,
                                       const std::vector<std::string>& sensor_nodes,
                                       double epsilon_m);

/// CSV with header "event,<sensor ids...>" and one 0/1 row per event.
InfluenceMatrix load_influence_csv(const std::string& text);

/// Inverse of load_influence_csv, bit-exact round trip.
std::string save_influence_csv(const InfluenceMatrix& matrix);

/// Column view of the matrix as explicit sets.
DetectionSets detection_sets(const InfluenceMatrix& matrix);

}  // namespace faultcover
