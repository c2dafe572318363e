#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "faultcover/benchmark.hpp"
#include "faultcover/coverage.hpp"
#include "faultcover/format.hpp"
#include "faultcover/influence.hpp"
#include "faultcover/metrics.hpp"
#include "faultcover/network.hpp"
#include "faultcover/oracle.hpp"
#include "faultcover/testcover.hpp"
#include "faultcover/transient.hpp"

namespace {

using namespace faultcover;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::vector<std::string> split_ids(const std::string& csv) {
    std::vector<std::string> ids;
    std::string id;
    std::istringstream in(csv);
    while (std::getline(in, id, ','))
        if (!id.empty()) ids.push_back(id);
    return ids;
}

/// Sensor selection for `metrics`: either a comma-separated list of column
/// ids or the path of a placement CSV whose `sensor` column is taken in
/// order.
std::vector<std::uint32_t> resolve_sensors(const InfluenceMatrix& matrix,
                                           const std::string& value) {
    std::vector<std::string> ids;
    if (std::filesystem::exists(value)) {
        std::istringstream in(read_file(value));
        std::string line;
        if (!std::getline(in, line))
            throw std::runtime_error("empty placement file: " + value);
        const std::vector<std::string> header = split_ids(line);
        std::size_t sensor_col = header.size();
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == "sensor") sensor_col = i;
        if (sensor_col == header.size())
            throw std::runtime_error("placement file has no sensor column: " + value);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const std::vector<std::string> fields = split_ids(line);
            if (sensor_col < fields.size()) ids.push_back(fields[sensor_col]);
        }
    } else {
        ids = split_ids(value);
    }
    std::vector<std::uint32_t> indices;
    indices.reserve(ids.size());
    for (const std::string& id : ids)
        indices.push_back(static_cast<std::uint32_t>(matrix.sensor_index(id)));
    return indices;
}

std::string placement_csv(const InfluenceMatrix& matrix,
                          const std::vector<std::uint32_t>& sensors,
                          const std::vector<std::uint64_t>& utilities,
                          const std::vector<std::uint64_t>& objectives,
                          std::uint64_t denominator) {
    std::ostringstream out;
    out << "step,sensor,utility,objective,score\n";
    for (std::size_t i = 0; i < sensors.size(); ++i) {
        const double score = denominator == 0 ? 1.0
                                              : static_cast<double>(objectives[i]) /
                                                    static_cast<double>(denominator);
        out << (i + 1) << ',' << matrix.sensor_ids()[sensors[i]] << ',' << utilities[i] << ','
            << objectives[i] << ',' << format_number(score) << '\n';
    }
    return out.str();
}

std::string solve_command(const std::string& matrix_path, const std::string& problem,
                          const std::string& algo, std::int64_t budget,
                          std::uint64_t cell_guard) {
    const InfluenceMatrix matrix = load_influence_csv(read_file(matrix_path));
    const std::uint64_t n = matrix.event_count();
    const std::uint64_t pair_universe = n < 2 ? 0 : n * (n - 1) / 2;

    std::vector<std::uint32_t> sensors;
    std::vector<std::uint64_t> utilities, objectives;
    if (problem == "msc") {
        if (algo == "greedy" || algo == "lazy") {
            const DetectionSets sets = detection_sets(matrix);
            CoverTrace trace;
            if (budget >= 0)
                trace = max_coverage(sets, static_cast<std::uint64_t>(budget));
            else
                trace = algo == "greedy" ? greedy_msc(sets) : lazy_greedy_msc(sets);
            for (const CoverStep& s : trace.steps) {
                sensors.push_back(s.sensor);
                utilities.push_back(s.gain);
                objectives.push_back(s.covered);
            }
        } else if (algo == "exact") {
            const DetectionSets sets = detection_sets(matrix);
            sensors = exact_msc(sets);
            std::uint64_t previous = 0;
            for (std::size_t i = 0; i < sensors.size(); ++i) {
                const std::uint64_t value =
                    detection_value(sets, std::span(sensors.data(), i + 1));
                utilities.push_back(value - previous);
                objectives.push_back(value);
                previous = value;
            }
        } else {
            throw std::runtime_error("--problem msc supports --algo greedy|lazy|exact");
        }
        return placement_csv(matrix, sensors, utilities, objectives, n);
    }
    if (problem != "mtc") throw std::runtime_error("--problem must be msc or mtc");

    if (algo == "ag" || algo == "tlg") {
        const PlacementResult result =
            algo == "ag" ? augmented_greedy(matrix) : tlg_solve(matrix, cell_guard);
        for (const PlacementStep& s : result.steps) {
            sensors.push_back(s.sensor);
            utilities.push_back(s.utility);
            objectives.push_back(s.separated);
        }
    } else if (algo == "exact") {
        sensors = exact_mtc(matrix);
        std::uint64_t previous = 0;
        for (std::size_t i = 0; i < sensors.size(); ++i) {
            const std::uint64_t value =
                identification_value(matrix, std::span(sensors.data(), i + 1));
            utilities.push_back(value - previous);
            objectives.push_back(value);
            previous = value;
        }
    } else {
        throw std::runtime_error("--problem mtc supports --algo tlg|ag|exact");
    }
    return placement_csv(matrix, sensors, utilities, objectives, pair_universe);
}

std::string scores_csv_row(const ScoreReport& report) {
    std::ostringstream out;
    out << report.sensor_count << ',' << format_number(report.detection_score) << ','
        << format_number(report.identification_score) << ','
        << format_number(report.localization_score) << ',' << report.worst_group_size;
    return out.str();
}

std::string metrics_command(const std::string& matrix_path, const std::string& sensor_arg,
                            bool exclude_undetected) {
    const InfluenceMatrix matrix = load_influence_csv(read_file(matrix_path));
    const std::vector<std::uint32_t> sensors = resolve_sensors(matrix, sensor_arg);
    const ScoreReport report = score_report(matrix, sensors, !exclude_undetected);
    return "sensors,I_D,I_I,I_L,I_W\n" + scores_csv_row(report) + "\n";
}

std::string curve_command(const std::string& matrix_path, const std::string& algo,
                          std::uint64_t cell_guard, bool normalize_worst) {
    const InfluenceMatrix matrix = load_influence_csv(read_file(matrix_path));
    std::vector<std::uint32_t> order;
    if (algo == "ag") {
        order = augmented_greedy(matrix).selected();
    } else if (algo == "tlg") {
        order = tlg_solve(matrix, cell_guard).selected();
    } else if (algo == "greedy" || algo == "lazy") {
        const DetectionSets sets = detection_sets(matrix);
        order = (algo == "greedy" ? greedy_msc(sets) : lazy_greedy_msc(sets)).selected();
    } else {
        throw std::runtime_error("curve supports --algo ag|tlg|greedy|lazy");
    }
    std::ostringstream out;
    out << "step,sensor,I_D,I_I,I_L,I_W";
    if (normalize_worst) out << ",I_W_norm";
    out << '\n';
    for (std::size_t k = 1; k <= order.size(); ++k) {
        const ScoreReport report = score_report(matrix, std::span(order.data(), k));
        out << k << ',' << matrix.sensor_ids()[order[k - 1]] << ','
            << format_number(report.detection_score) << ','
            << format_number(report.identification_score) << ','
            << format_number(report.localization_score) << ',' << report.worst_group_size;
        if (normalize_worst) out << ',' << format_number(report.worst_group_normalized);
        out << '\n';
    }
    return out.str();
}

std::string simulate_command(const std::string& scenario_path) {
    const Scenario scenario = parse_scenario(read_file(scenario_path));
    const SimulationResult result = simulate(scenario);
    std::ostringstream out;
    out << "step,grid_index,head_m,flow_m3s,pressure_pa\n";
    for (std::size_t t = 0; t < result.history.size(); ++t) {
        const GridState& state = result.history[t];
        for (const SensorReading& reading : result.readings) {
            out << t << ',' << reading.grid_index << ','
                << format_number(state.head_m[reading.grid_index]) << ','
                << format_number(state.flow_m3s[reading.grid_index]) << ','
                << format_number(reading.pressure_pa[t]) << '\n';
        }
    }
    // Latched boolean outputs, one summary row per sensor.
    for (const SensorReading& reading : result.readings)
        out << "summary," << reading.grid_index << ",,," << (reading.triggered ? 1 : 0)
            << '\n';
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Sensor placement for link-failure detection and localization on pipe "
        "networks.\nSet FAULTCOVER_THREADS to cap worker threads (default: hardware "
        "concurrency)."};
    app.require_subcommand(1);

    std::string input, output, problem = "msc", algo, sensor_arg, spec_path;
    double epsilon = 0.0;
    std::int64_t budget = -1;
    std::uint64_t cell_guard = kDefaultPairCellGuard;
    std::string sensors_csv;
    bool with_times = false;
    bool exclude_undetected = false;
    bool normalize_worst = false;

    auto* build = app.add_subcommand("build-influence",
                                     "Build the influence matrix from a network file");
    build->add_option("network", input, "network JSON file")->required();
    build->add_option("--epsilon", epsilon, "detection distance threshold in meters")
        ->required();
    build->add_option("--sensors", sensors_csv,
                      "comma-separated candidate sensor node ids (default: all nodes)");
    build->add_option("-o,--output", output, "output CSV path (default: stdout)");

    auto* solve = app.add_subcommand("solve", "Solve a placement problem on a matrix");
    solve->add_option("matrix", input, "influence matrix CSV")->required();
    solve->add_option("--problem", problem, "msc (detection) or mtc (identification)")
        ->required();
    solve->add_option("--algo", algo, "greedy|lazy (msc), tlg|ag (mtc), or exact")->required();
    solve->add_option("--budget", budget, "sensor budget for msc (maximum coverage)");
    solve->add_option("--cell-guard", cell_guard, "pairwise cell cap for the tlg transform");
    solve->add_option("-o,--output", output, "output CSV path (default: stdout)");

    auto* metrics = app.add_subcommand("metrics", "Score a sensor set on a matrix");
    metrics->add_option("matrix", input, "influence matrix CSV")->required();
    metrics
        ->add_option("--sensors", sensor_arg,
                     "comma-separated sensor ids, or a placement CSV path")
        ->required();
    metrics->add_flag("--exclude-undetected", exclude_undetected,
                      "drop the all-zero signature group from the partition");
    metrics->add_option("-o,--output", output, "output CSV path (default: stdout)");

    auto* curve = app.add_subcommand(
        "curve", "Per-step score curves along a solver's selection order");
    curve->add_option("matrix", input, "influence matrix CSV")->required();
    curve->add_option("--algo", algo, "ag|tlg|greedy|lazy")->default_val("ag");
    curve->add_option("--cell-guard", cell_guard, "pairwise cell cap for the tlg transform");
    curve->add_flag("--normalize-worst", normalize_worst,
                    "append the worst set size divided by the event count");
    curve->add_option("-o,--output", output, "output CSV path (default: stdout)");

    auto* bench = app.add_subcommand("benchmark", "Run solver work-count comparisons");
    bench->add_option("--spec", spec_path, "benchmark spec JSON")->required();
    bench->add_option("--cell-guard", cell_guard, "pairwise cell cap for the tlg transform");
    bench->add_flag("--times", with_times,
                    "include wall-time columns (makes output nondeterministic)");
    bench->add_option("-o,--output", output, "output CSV path (default: stdout)");

    auto* sim = app.add_subcommand("simulate", "Run a transient burst scenario");
    sim->add_option("scenario", input, "scenario JSON file")->required();
    sim->add_option("-o,--output", output, "output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            const Network net = parse_network(read_file(input));
            std::vector<std::string> sensor_nodes;
            if (sensors_csv.empty())
                for (const Node& n : net.nodes()) sensor_nodes.push_back(n.id);
            else
                sensor_nodes = split_ids(sensors_csv);
            const InfluenceMatrix matrix = build_influence_matrix(net, sensor_nodes, epsilon);
            write_output(output, save_influence_csv(matrix));
        } else if (solve->parsed()) {
            write_output(output, solve_command(input, problem, algo, budget, cell_guard));
        } else if (metrics->parsed()) {
            write_output(output, metrics_command(input, sensor_arg, exclude_undetected));
        } else if (curve->parsed()) {
            write_output(output, curve_command(input, algo, cell_guard, normalize_worst));
        } else if (bench->parsed()) {
            const std::vector<InstanceSpec> specs = parse_instance_specs(read_file(spec_path));
            const std::vector<BenchRecord> records = run_benchmark(specs, cell_guard);
            write_output(output, benchmark_csv(records, with_times));
        } else if (sim->parsed()) {
            write_output(output, simulate_command(input));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
