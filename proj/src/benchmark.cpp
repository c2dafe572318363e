#include "faultcover/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "faultcover/format.hpp"
#include "faultcover/network.hpp"

namespace faultcover {

namespace {

// Small deterministic generator (splitmix64-seeded xorshift) so instances
// are identical across standard libraries, not just across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        state_ = seed + 0x9e3779b97f4a7c15ull;
        next();
    }
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t bound) { return next() % bound; }

private:
    std::uint64_t state_ = 0;
};

InfluenceMatrix generate_grid(const InstanceSpec& spec) {
    if (spec.rows < 2 || spec.cols < 2)
        throw std::invalid_argument("grid-network needs rows >= 2 and cols >= 2");
    if (!(spec.epsilon_m > 0.0))
        throw std::invalid_argument("grid-network needs a positive epsilon_m");

    std::vector<Node> nodes;
    std::vector<Link> links;
    auto node_id = [&](std::size_t r, std::size_t c) {
        return "n" + std::to_string(r) + "_" + std::to_string(c);
    };
    for (std::size_t r = 0; r < spec.rows; ++r)
        for (std::size_t c = 0; c < spec.cols; ++c)
            nodes.push_back({node_id(r, c), 0.0,
                             static_cast<double>(c) * spec.spacing_m,
                             static_cast<double>(r) * spec.spacing_m});
    for (std::size_t r = 0; r < spec.rows; ++r)
        for (std::size_t c = 0; c + 1 < spec.cols; ++c)
            links.push_back({"h" + std::to_string(r) + "_" + std::to_string(c),
                             node_id(r, c), node_id(r, c + 1), spec.spacing_m,
                             {}, {}, {}});
    for (std::size_t r = 0; r + 1 < spec.rows; ++r)
        for (std::size_t c = 0; c < spec.cols; ++c)
            links.push_back({"v" + std::to_string(r) + "_" + std::to_string(c),
                             node_id(r, c), node_id(r + 1, c), spec.spacing_m,
                             {}, {}, {}});
    Network net(std::move(nodes), std::move(links));

    std::vector<std::string> sensor_nodes;
    if (spec.sensor_count == 0 || spec.sensor_count >= net.nodes().size()) {
        for (const Node& n : net.nodes()) sensor_nodes.push_back(n.id);
    } else {
        // Partial Fisher-Yates over node indices.
        Rng rng(spec.seed);
        std::vector<std::size_t> order(net.nodes().size());
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = 0; i < spec.sensor_count; ++i) {
            const std::size_t j = i + rng.below(order.size() - i);
            std::swap(order[i], order[j]);
            sensor_nodes.push_back(net.nodes()[order[i]].id);
        }
    }
    return build_influence_matrix(net, sensor_nodes, spec.epsilon_m);
}

InfluenceMatrix generate_geometric(const InstanceSpec& spec) {
    if (spec.node_count < 2)
        throw std::invalid_argument("random-geometric needs node_count >= 2");
    if (!(spec.side_m > 0.0) || !(spec.radius_m > 0.0) || !(spec.epsilon_m > 0.0))
        throw std::invalid_argument("random-geometric needs positive side_m, radius_m, epsilon_m");

    Rng rng(spec.seed);
    std::vector<double> xs(spec.node_count), ys(spec.node_count);
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < spec.node_count; ++i) {
        xs[i] = rng.uniform() * spec.side_m;
        ys[i] = rng.uniform() * spec.side_m;
        nodes.push_back({"n" + std::to_string(i), 0.0, xs[i], ys[i]});
    }
    std::vector<Link> links;
    for (std::size_t i = 0; i < spec.node_count; ++i) {
        for (std::size_t j = i + 1; j < spec.node_count; ++j) {
            const double dx = xs[i] - xs[j];
            const double dy = ys[i] - ys[j];
            const double d = std::sqrt(dx * dx + dy * dy);
            if (d > 0.0 && d <= spec.radius_m)
                links.push_back({"e" + std::to_string(i) + "_" + std::to_string(j),
                                 nodes[i].id, nodes[j].id, d, {}, {}, {}});
        }
    }
    Network net(std::move(nodes), std::move(links));
    std::vector<std::string> sensor_nodes;
    for (const Node& n : net.nodes()) sensor_nodes.push_back(n.id);
    return build_influence_matrix(net, sensor_nodes, spec.epsilon_m);
}

InfluenceMatrix generate_matrix(const InstanceSpec& spec) {
    if (spec.density < 0.0 || spec.density > 1.0)
        throw std::invalid_argument("random-matrix density must be in [0,1]");
    std::vector<std::string> event_ids, sensor_ids;
    for (std::size_t j = 0; j < spec.events; ++j) event_ids.push_back("e" + std::to_string(j));
    for (std::size_t i = 0; i < spec.sensors; ++i) sensor_ids.push_back("s" + std::to_string(i));
    InfluenceMatrix matrix(std::move(event_ids), std::move(sensor_ids));
    Rng rng(spec.seed);
    for (std::size_t j = 0; j < spec.events; ++j)
        for (std::size_t i = 0; i < spec.sensors; ++i)
            if (rng.uniform() < spec.density) matrix.set_cell(j, i);
    return matrix;
}

}  // namespace

InfluenceMatrix generate_instance(const InstanceSpec& spec) {
    switch (spec.kind) {
        case InstanceSpec::Kind::GridNetwork: return generate_grid(spec);
        case InstanceSpec::Kind::RandomGeometric: return generate_geometric(spec);
        case InstanceSpec::Kind::RandomMatrix: return generate_matrix(spec);
    }
    throw std::invalid_argument("unknown instance kind");
}

std::vector<InstanceSpec> parse_instance_specs(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed benchmark spec: ") + e.what());
    }
    std::vector<InstanceSpec> specs;
    try {
        for (const auto& js : doc.at("instances")) {
            InstanceSpec spec;
            spec.id = js.value("id", "instance" + std::to_string(specs.size()));
            const std::string kind = js.at("kind").get<std::string>();
            if (kind == "grid-network")
                spec.kind = InstanceSpec::Kind::GridNetwork;
            else if (kind == "random-geometric")
                spec.kind = InstanceSpec::Kind::RandomGeometric;
            else if (kind == "random-matrix")
                spec.kind = InstanceSpec::Kind::RandomMatrix;
            else
                throw std::runtime_error("unknown instance kind: " + kind);
            spec.seed = js.value("seed", std::uint64_t(0));
            spec.rows = js.value("rows", std::size_t(0));
            spec.cols = js.value("cols", std::size_t(0));
            spec.spacing_m = js.value("spacing_m", 100.0);
            spec.sensor_count = js.value("sensor_count", std::size_t(0));
            spec.epsilon_m = js.value("epsilon_m", 0.0);
            spec.node_count = js.value("node_count", std::size_t(0));
            spec.side_m = js.value("side_m", 0.0);
            spec.radius_m = js.value("radius_m", 0.0);
            spec.events = js.value("events", std::size_t(0));
            spec.sensors = js.value("sensors", std::size_t(0));
            spec.density = js.value("density", 0.0);
            specs.push_back(std::move(spec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed benchmark spec: ") + e.what());
    }
    return specs;
}

std::vector<BenchRecord> run_benchmark(std::span<const InstanceSpec> specs,
                                       std::uint64_t tlg_cell_guard) {
    using Clock = std::chrono::steady_clock;
    std::vector<BenchRecord> records;
    for (const InstanceSpec& spec : specs) {
        BenchRecord record;
        record.instance = spec.id;
        record.seed = spec.seed;
        try {
            const InfluenceMatrix matrix = generate_instance(spec);
            record.events = matrix.event_count();
            record.sensors = matrix.sensor_count();
            for (std::size_t i = 0; i < matrix.sensor_count(); ++i)
                record.max_detected =
                    std::max<std::uint64_t>(record.max_detected, matrix.column(i).count());
            record.n_over_k = record.max_detected == 0
                                  ? 0.0
                                  : static_cast<double>(record.events) /
                                        static_cast<double>(record.max_detected);

            const auto ag_start = Clock::now();
            const PlacementResult ag = augmented_greedy(matrix);
            record.ag_ms =
                std::chrono::duration<double, std::milli>(Clock::now() - ag_start).count();
            record.ag_cover = ag.steps.size();
            record.ag_iterations = ag.trace.size();
            record.ag_pair_comparisons = ag.comparison_count;
            record.ag_event_ops = static_cast<std::uint64_t>(ag.trace.size()) *
                                  record.sensors * record.events;
            record.ag_work = record.ag_pair_comparisons + record.ag_event_ops;

            try {
                const auto tlg_start = Clock::now();
                const PlacementResult tlg = tlg_solve(matrix, tlg_cell_guard);
                record.tlg_ms =
                    std::chrono::duration<double, std::milli>(Clock::now() - tlg_start)
                        .count();
                record.tlg_cover = tlg.steps.size();
                record.tlg_transform_cells = tlg.transform_cells;
                record.tlg_eval_pairs = tlg.evaluation_count * tlg.pair_universe;
                record.tlg_work = record.tlg_transform_cells + record.tlg_eval_pairs;
                record.covers_match = ag.selected() == tlg.selected();
                record.work_ratio = record.ag_work == 0
                                        ? 0.0
                                        : static_cast<double>(record.tlg_work) /
                                              static_cast<double>(record.ag_work);
            } catch (const SizeGuardError&) {
                record.tlg_skipped = true;
            }
        } catch (const std::exception& e) {
            record.error = e.what();
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::string benchmark_csv(std::span<const BenchRecord> records, bool include_times) {
    std::ostringstream out;
    out << "instance,events,sensors,seed,k_max,n_over_k,ag_cover,ag_iterations,tlg_cover,"
           "covers_match,tlg_skipped,ag_pair_comparisons,ag_event_ops,ag_work,"
           "tlg_transform_cells,tlg_eval_pairs,tlg_work,work_ratio";
    if (include_times) out << ",ag_ms,tlg_ms";
    out << ",error\n";
    for (const BenchRecord& r : records) {
        out << r.instance << ',' << r.events << ',' << r.sensors << ',' << r.seed << ','
            << r.max_detected << ',' << format_number(r.n_over_k) << ',' << r.ag_cover << ','
            << r.ag_iterations << ',' << r.tlg_cover << ',' << (r.covers_match ? 1 : 0) << ','
            << (r.tlg_skipped ? 1 : 0) << ',' << r.ag_pair_comparisons << ','
            << r.ag_event_ops << ',' << r.ag_work << ','
            << r.tlg_transform_cells << ',' << r.tlg_eval_pairs << ',' << r.tlg_work << ','
            << format_number(r.work_ratio);
        if (include_times)
            out << ',' << format_number(r.ag_ms) << ',' << format_number(r.tlg_ms);
        out << ',' << r.error << '\n';
    }
    return out.str();
}

}  // namespace faultcover
