#include "faultcover/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "json.hpp"

namespace faultcover {

namespace {

using Lookup = std::vector<std::pair<std::string, std::size_t>>;

Lookup build_lookup(const Lookup& entries, const char* what) {
    Lookup sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].first == sorted[i - 1].first)
            throw std::invalid_argument(std::string("duplicate ") + what + " id: " +
                                        sorted[i].first);
    }
    return sorted;
}

std::size_t find_in(const Lookup& lookup, const std::string& id, const char* what) {
    auto it = std::lower_bound(lookup.begin(), lookup.end(), id,
                               [](const auto& e, const std::string& k) { return e.first < k; });
    if (it == lookup.end() || it->first != id)
        throw std::invalid_argument(std::string("unknown ") + what + " id: " + id);
    return it->second;
}

void require_positive(double v, const std::string& field, const std::string& id) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(field + " must be positive on \"" + id + "\"");
}

}  // namespace

Network::Network(std::vector<Node> nodes, std::vector<Link> links)
    : nodes_(std::move(nodes)), links_(std::move(links)) {
    Lookup node_entries, link_entries;
    node_entries.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.id.empty()) throw std::invalid_argument("node with empty id");
        if (n.elevation_m < 0.0 || !std::isfinite(n.elevation_m))
            throw std::invalid_argument("negative elevation on node \"" + n.id + "\"");
        node_entries.emplace_back(n.id, i);
    }
    node_lookup_ = build_lookup(node_entries, "node");

    link_entries.reserve(links_.size());
    adjacency_.assign(nodes_.size(), {});
    for (std::size_t i = 0; i < links_.size(); ++i) {
        const Link& l = links_[i];
        if (l.id.empty()) throw std::invalid_argument("link with empty id");
        require_positive(l.length_m, "length_m", l.id);
        if (l.diameter_m) require_positive(*l.diameter_m, "diameter_m", l.id);
        if (l.wave_speed_m_s) require_positive(*l.wave_speed_m_s, "wave_speed_m_s", l.id);
        if (l.friction && (*l.friction < 0.0 || !std::isfinite(*l.friction)))
            throw std::invalid_argument("negative friction on link \"" + l.id + "\"");
        const std::size_t from = find_in(node_lookup_, l.from, "node");
        const std::size_t to = find_in(node_lookup_, l.to, "node");
        if (from == to)
            throw std::invalid_argument("self-loop link \"" + l.id + "\"");
        link_entries.emplace_back(l.id, i);
        adjacency_[from].push_back({static_cast<std::uint32_t>(to), l.length_m,
                                    static_cast<std::uint32_t>(i)});
        adjacency_[to].push_back({static_cast<std::uint32_t>(from), l.length_m,
                                  static_cast<std::uint32_t>(i)});
    }
    link_lookup_ = build_lookup(link_entries, "link");
}

std::size_t Network::node_index(const std::string& id) const {
    return find_in(node_lookup_, id, "node");
}

std::size_t Network::link_index(const std::string& id) const {
    return find_in(link_lookup_, id, "link");
}

bool Network::has_node(const std::string& id) const {
    auto it = std::lower_bound(node_lookup_.begin(), node_lookup_.end(), id,
                               [](const auto& e, const std::string& k) { return e.first < k; });
    return it != node_lookup_.end() && it->first == id;
}

namespace {

double read_number(const nlohmann::json& obj, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw std::runtime_error(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

std::optional<double> read_optional(const nlohmann::json& obj, const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return read_number(obj, key);
}

}  // namespace

Network parse_network(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed network document: ") + e.what());
    }
    if (!doc.is_object())
        throw std::runtime_error("malformed network document: top level must be an object");

    std::vector<Node> nodes;
    std::vector<Link> links;
    try {
        for (const auto& jn : doc.value("nodes", nlohmann::json::array())) {
            Node n;
            n.id = jn.at("id").get<std::string>();
            n.elevation_m = jn.contains("elevation_m") ? read_number(jn, "elevation_m") : 0.0;
            n.x = read_optional(jn, "x");
            n.y = read_optional(jn, "y");
            nodes.push_back(std::move(n));
        }
        for (const auto& jl : doc.value("links", nlohmann::json::array())) {
            Link l;
            l.id = jl.at("id").get<std::string>();
            l.from = jl.at("from").get<std::string>();
            l.to = jl.at("to").get<std::string>();
            l.length_m = read_number(jl, "length_m");
            l.diameter_m = read_optional(jl, "diameter_m");
            l.wave_speed_m_s = read_optional(jl, "wave_speed_m_s");
            l.friction = read_optional(jl, "friction");
            links.push_back(std::move(l));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed network document: ") + e.what());
    }
    return Network(std::move(nodes), std::move(links));
}

std::string serialize_network(const Network& net) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (const Node& n : net.nodes()) {
        nlohmann::ordered_json jn;
        jn["id"] = n.id;
        jn["elevation_m"] = n.elevation_m;
        if (n.x) jn["x"] = *n.x;
        if (n.y) jn["y"] = *n.y;
        doc["nodes"].push_back(std::move(jn));
    }
    doc["links"] = nlohmann::ordered_json::array();
    for (const Link& l : net.links()) {
        nlohmann::ordered_json jl;
        jl["id"] = l.id;
        jl["from"] = l.from;
        jl["to"] = l.to;
        jl["length_m"] = l.length_m;
        if (l.diameter_m) jl["diameter_m"] = *l.diameter_m;
        if (l.wave_speed_m_s) jl["wave_speed_m_s"] = *l.wave_speed_m_s;
        if (l.friction) jl["friction"] = *l.friction;
        doc["links"].push_back(std::move(jl));
    }
    return doc.dump(2) + "\n";
}

std::vector<EventPoint> event_locations(const Network& net) {
    std::vector<EventPoint> events;
    events.reserve(net.links().size());
    for (const Link& l : net.links()) events.push_back({l.id, l.id, 0.5});
    return events;
}

std::vector<double> event_node_distances(const Network& net, const EventPoint& event) {
    if (!(event.offset_fraction >= 0.0 && event.offset_fraction <= 1.0))
        throw std::invalid_argument("event offset_fraction outside [0,1] on \"" +
                                    event.event_id + "\"");
    const std::size_t li = net.link_index(event.link_id);
    const Link& link = net.links()[li];
    const std::size_t from = net.node_index(link.from);
    const std::size_t to = net.node_index(link.to);

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(net.nodes().size(), kInf);

    // Dijkstra seeded with the two half-segments of the failed link. The
    // full link stays relaxable, which is harmless: a path through it can
    // never beat the direct half-segment.
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    auto relax = [&](std::size_t node, double d) {
        if (d < dist[node]) {
            dist[node] = d;
            queue.push({d, node});
        }
    };
    relax(from, event.offset_fraction * link.length_m);
    relax(to, (1.0 - event.offset_fraction) * link.length_m);

    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (const Network::Edge& e : net.adjacency()[u]) relax(e.to, d + e.length_m);
    }
    return dist;
}

double event_node_distance(const Network& net, const EventPoint& event,
                           const std::string& node_id) {
    const std::size_t target = net.node_index(node_id);
    return event_node_distances(net, event)[target];
}

}  // namespace faultcover
