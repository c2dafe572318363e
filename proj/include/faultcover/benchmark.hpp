#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "faultcover/influence.hpp"
#include "faultcover/testcover.hpp"

namespace faultcover {

/// Seeded synthetic instance description. Generation is fully deterministic
/// per seed.
struct InstanceSpec {
    enum class Kind { GridNetwork, RandomGeometric, RandomMatrix };

    std::string id;
    Kind kind = Kind::RandomMatrix;
    std::uint64_t seed = 0;

    // grid-network: rows x cols lattice of nodes joined by pipes of
    // `spacing_m`; `sensor_count` nodes are sampled as candidate sensors
    // (0 = all nodes) and the matrix uses the distance threshold.
    std::size_t rows = 0;
    std::size_t cols = 0;
    double spacing_m = 100.0;
    std::size_t sensor_count = 0;
    double epsilon_m = 0.0;

    // random-geometric: `node_count` points in a side_m x side_m square,
    // linked when closer than radius_m.
    std::size_t node_count = 0;
    double side_m = 0.0;
    double radius_m = 0.0;

    // random-matrix: independent Bernoulli(density) cells.
    std::size_t events = 0;
    std::size_t sensors = 0;
    double density = 0.0;
};

InfluenceMatrix generate_instance(const InstanceSpec& spec);

/// Parse {"instances": [...]} per the benchmark spec file schema.
std::vector<InstanceSpec> parse_instance_specs(const std::string& text);

struct BenchRecord {
    std::string instance;
    std::size_t events = 0;
    std::size_t sensors = 0;
    std::uint64_t seed = 0;
    std::uint64_t max_detected = 0;  // k = max |C_i|
    double n_over_k = 0.0;

    std::size_t ag_cover = 0;
    std::size_t ag_iterations = 0;  // selections plus the terminating sweep
    std::size_t tlg_cover = 0;
    bool covers_match = false;
    bool tlg_skipped = false;     // pairwise instance above the cell guard
    std::string error;            // per-instance failure, run continues

    // Platform-independent work counts.
    std::uint64_t ag_pair_comparisons = 0;
    std::uint64_t ag_event_ops = 0;       // candidate scans of the event universe
    std::uint64_t ag_work = 0;            // sum of the two
    std::uint64_t tlg_transform_cells = 0;
    std::uint64_t tlg_eval_pairs = 0;     // marginal evaluations x pair universe
    std::uint64_t tlg_work = 0;
    double work_ratio = 0.0;              // tlg_work / ag_work

    double ag_ms = 0.0;
    double tlg_ms = 0.0;
};

/// Solve every instance with augmented greedy and, when the transform fits
/// the cell guard, with the transform-based solver; verify the covers agree
/// and record the work counts. Per-instance failures are recorded and the
/// run continues.
std::vector<BenchRecord> run_benchmark(std::span<const InstanceSpec> specs,
                                       std::uint64_t tlg_cell_guard = kDefaultPairCellGuard);

/// Wall-time columns are optional: dropping them keeps the report
/// byte-identical across repeated runs.
std::string benchmark_csv(std::span<const BenchRecord> records, bool include_times = true);

}  // namespace faultcover
