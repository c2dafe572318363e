#include "faultcover/influence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace faultcover {

namespace {

void require_unique(const std::vector<std::string>& ids, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& id : ids) {
        if (id.empty()) throw std::invalid_argument(std::string("empty ") + what + " id");
        if (!seen.insert(id).second)
            throw std::invalid_argument(std::string("duplicate ") + what + " id: " + id);
    }
}

std::size_t index_of(const std::vector<std::string>& ids, const std::string& id,
                     const char* what) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end())
        throw std::invalid_argument(std::string("unknown ") + what + " id: " + id);
    return static_cast<std::size_t>(it - ids.begin());
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("FAULTCOVER_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) n = static_cast<std::size_t>(v);
    }
    n = std::max<std::size_t>(n, 1);
    return std::min(n, std::max<std::size_t>(jobs, 1));
}

}  // namespace

InfluenceMatrix::InfluenceMatrix(std::vector<std::string> event_ids,
                                 std::vector<std::string> sensor_ids)
    : event_ids_(std::move(event_ids)), sensor_ids_(std::move(sensor_ids)) {
    require_unique(event_ids_, "event");
    require_unique(sensor_ids_, "sensor");
    columns_.assign(sensor_ids_.size(), BitSet(event_ids_.size()));
}

std::size_t InfluenceMatrix::sensor_index(const std::string& id) const {
    return index_of(sensor_ids_, id, "sensor");
}

std::size_t InfluenceMatrix::event_index(const std::string& id) const {
    return index_of(event_ids_, id, "event");
}

InfluenceMatrix build_influence_matrix(const Network& net,
                                       const std::vector<std::string>& sensor_nodes,
                                       double epsilon_m) {
    if (!(epsilon_m > 0.0))
        throw std::invalid_argument("epsilon_m must be positive");
    std::vector<std::size_t> sensor_node_index;
    sensor_node_index.reserve(sensor_nodes.size());
    for (const auto& id : sensor_nodes) sensor_node_index.push_back(net.node_index(id));

    const std::vector<EventPoint> events = event_locations(net);
    std::vector<std::string> event_ids;
    event_ids.reserve(events.size());
    for (const auto& e : events) event_ids.push_back(e.event_id);

    InfluenceMatrix matrix(std::move(event_ids), sensor_nodes);

    // One shortest-path sweep per event; rows are independent, so they run
    // on worker threads and each thread fills disjoint row sets.
    std::vector<std::vector<bool>> rows(events.size());
    const std::size_t workers = worker_count(events.size());
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= events.size()) return;
            const std::vector<double> dist = event_node_distances(net, events[j]);
            std::vector<bool> row(sensor_node_index.size(), false);
            for (std::size_t i = 0; i < sensor_node_index.size(); ++i)
                row[i] = dist[sensor_node_index[i]] <= epsilon_m;
            rows[j] = std::move(row);
        }
    };
    if (workers <= 1) {
        run();
    } else {
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t i = 0; i < sensor_node_index.size(); ++i)
            if (rows[j][i]) matrix.set_cell(j, i);
    return matrix;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

}  // namespace

InfluenceMatrix load_influence_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("influence csv: empty document");
    std::vector<std::string> header = split_csv_line(line);
    if (header.empty() || header[0] != "event")
        throw std::runtime_error("influence csv: first header cell must be \"event\"");
    std::vector<std::string> sensor_ids(header.begin() + 1, header.end());

    std::vector<std::string> event_ids;
    std::vector<std::vector<bool>> cells;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("influence csv: ragged row at line " +
                                     std::to_string(line_no));
        event_ids.push_back(fields[0]);
        std::vector<bool> row;
        row.reserve(sensor_ids.size());
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (fields[i] == "0")
                row.push_back(false);
            else if (fields[i] == "1")
                row.push_back(true);
            else
                throw std::runtime_error("influence csv: cell must be 0 or 1 at line " +
                                         std::to_string(line_no));
        }
        cells.push_back(std::move(row));
    }

    InfluenceMatrix matrix(std::move(event_ids), std::move(sensor_ids));
    for (std::size_t j = 0; j < cells.size(); ++j)
        for (std::size_t i = 0; i < cells[j].size(); ++i)
            if (cells[j][i]) matrix.set_cell(j, i);
    return matrix;
}

std::string save_influence_csv(const InfluenceMatrix& matrix) {
    std::ostringstream out;
    out << "event";
    for (const auto& id : matrix.sensor_ids()) out << ',' << id;
    out << '\n';
    for (std::size_t j = 0; j < matrix.event_count(); ++j) {
        out << matrix.event_ids()[j];
        for (std::size_t i = 0; i < matrix.sensor_count(); ++i)
            out << ',' << (matrix.cell(j, i) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

DetectionSets detection_sets(const InfluenceMatrix& matrix) {
    DetectionSets sets;
    sets.universe = matrix.event_count();
    sets.sets.reserve(matrix.sensor_count());
    for (std::size_t i = 0; i < matrix.sensor_count(); ++i) sets.sets.push_back(matrix.column(i));
    return sets;
}

}  // namespace faultcover
