#pragma once

#include <cstdint>
#include <vector>

#include "faultcover/influence.hpp"

namespace testing {

/// The 10-event / 8-sensor example matrix used across the suites.
inline faultcover::InfluenceMatrix example_matrix() {
    const std::vector<std::vector<int>> rows = {
        {1, 1, 1, 0, 1, 0, 0, 0},
        {1, 1, 1, 1, 0, 1, 0, 0},
        {1, 1, 0, 1, 1, 0, 0, 1},
        {1, 0, 1, 1, 1, 1, 1, 0},
        {1, 0, 1, 1, 0, 1, 1, 0},
        {0, 1, 1, 1, 1, 0, 1, 1},
        {0, 0, 1, 1, 1, 1, 1, 1},
        {0, 1, 0, 1, 1, 0, 1, 1},
        {0, 0, 1, 1, 0, 1, 1, 1},
        {0, 0, 0, 1, 1, 1, 1, 1},
    };
    std::vector<std::string> events, sensors;
    for (int j = 1; j <= 10; ++j) events.push_back(std::to_string(j));
    for (int i = 1; i <= 8; ++i) sensors.push_back(std::to_string(i));
    faultcover::InfluenceMatrix matrix(std::move(events), std::move(sensors));
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t i = 0; i < rows[j].size(); ++i)
            if (rows[j][i]) matrix.set_cell(j, i);
    return matrix;
}

/// Deterministic generator for property-test instances.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) { next(); }
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

inline faultcover::InfluenceMatrix random_matrix(Rng& rng, std::size_t n, std::size_t m,
                                                 double density) {
    std::vector<std::string> events, sensors;
    for (std::size_t j = 0; j < n; ++j) events.push_back("e" + std::to_string(j));
    for (std::size_t i = 0; i < m; ++i) sensors.push_back("s" + std::to_string(i));
    faultcover::InfluenceMatrix matrix(std::move(events), std::move(sensors));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (rng.uniform() < density) matrix.set_cell(j, i);
    return matrix;
}

inline std::vector<std::uint32_t> all_sensors(const faultcover::InfluenceMatrix& matrix) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t i = 0; i < matrix.sensor_count(); ++i) all.push_back(i);
    return all;
}

}  // namespace testing
