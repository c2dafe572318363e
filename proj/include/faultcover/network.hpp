#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace faultcover {

struct Node {
    std::string id;
    double elevation_m = 0.0;
    std::optional<double> x;  // plot coordinates only
    std::optional<double> y;

    friend bool operator==(const Node&, const Node&) = default;
};

struct Link {
    std::string id;
    std::string from;
    std::string to;
    double length_m = 0.0;
    // Hydraulic parameters, needed only by the transient simulator.
    std::optional<double> diameter_m;
    std::optional<double> wave_speed_m_s;
    std::optional<double> friction;

    friend bool operator==(const Link&, const Link&) = default;
};

/// A failure event on a link. By convention one event sits at the middle of
/// every pipe; callers may override the offset or filter links.
struct EventPoint {
    std::string event_id;
    std::string link_id;
    double offset_fraction = 0.5;  // 0 = `from` endpoint, 1 = `to` endpoint
};

/// Immutable pipe network graph. Parallel links between the same pair of
/// nodes are allowed (distinct ids); self-loops are not. Safe to share
/// across threads once constructed.
class Network {
public:
    Network() = default;
    /// Validates all invariants; throws std::invalid_argument on violation.
    Network(std::vector<Node> nodes, std::vector<Link> links);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }

    std::size_t node_index(const std::string& id) const;  // throws on unknown id
    std::size_t link_index(const std::string& id) const;
    bool has_node(const std::string& id) const;

    struct Edge {
        std::uint32_t to;
        double length_m;
        std::uint32_t link;
    };
    const std::vector<std::vector<Edge>>& adjacency() const { return adjacency_; }

    friend bool operator==(const Network& a, const Network& b) {
        return a.nodes_ == b.nodes_ && a.links_ == b.links_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<Edge>> adjacency_;
    std::vector<std::pair<std::string, std::size_t>> node_lookup_;  // sorted by id
    std::vector<std::pair<std::string, std::size_t>> link_lookup_;
};

/// Parse the JSON network document (top-level "nodes" and "links" arrays;
/// unknown keys ignored). Throws std::runtime_error / std::invalid_argument
/// with a description of the first problem found.
Network parse_network(const std::string& text);

/// Inverse of parse_network up to key order and absent optionals.
std::string serialize_network(const Network& net);

/// One event per link, at the pipe midpoint, in link declaration order.
std::vector<EventPoint> event_locations(const Network& net);

/// Shortest-path distance in meters from the event point to every node,
/// treating the event as a temporary vertex that splits its link into two
/// segments. Unreachable nodes get +infinity. Indexed like net.nodes().
std::vector<double> event_node_distances(const Network& net, const EventPoint& event);

/// Single-node variant of event_node_distances.
double event_node_distance(const Network& net, const EventPoint& event,
                           const std::string& node_id);

}  // namespace faultcover
