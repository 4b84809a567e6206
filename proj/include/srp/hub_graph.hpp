#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "srp/tntp.hpp"

namespace srp {

// Complete directed distance graph over a hub subset of a road network:
// dist(a, b) = shortest-path distance from hub a to hub b in the network.
// By construction the triangle inequality holds and the diagonal is zero.
class HubGraph {
public:
    HubGraph() = default;
    // `hubs` are 1-based network node ids, distinct; `dist` is row-major
    // |hubs| x |hubs| in hub order. Distances must be finite and >= 0.
    HubGraph(std::vector<int> hubs, std::vector<double> dist);

    int hub_count() const { return static_cast<int>(hubs_.size()); }
    const std::vector<int>& hubs() const { return hubs_; }

    // Distance by position in hubs() (0-based).
    double dist_at(int a, int b) const { return dist_[static_cast<size_t>(a) * hubs_.size() + b]; }
    // Distance by network node id; throws if an id is not a hub.
    double dist(int hub_id_a, int hub_id_b) const;
    // Position of a node id within hubs(), or -1 if it is not a hub.
    int index_of(int hub_id) const;

    double max_dist() const;

private:
    std::vector<int> hubs_;
    std::vector<double> dist_;       // row-major hub_count^2
    std::vector<int> index_by_id_;   // node id -> hub position, -1 elsewhere
};

// Metric closure of `net` restricted to `hubs` (defaults to every node when
// `hubs` is empty). One Dijkstra sweep per hub, run concurrently; the result
// is independent of scheduling. Throws if any hub pair is unreachable or a
// hub id is out of range / duplicated.
HubGraph build_hub_graph(const Network& net, std::vector<int> hubs = {});

// CSV form: header "hub,<id>,<id>,..." then one row per source hub. With
// full_precision the numbers survive a round trip bit-exactly; otherwise
// they carry two decimal places.
void write_hub_csv(std::ostream& out, const HubGraph& g, bool full_precision = true);
HubGraph read_hub_csv(std::istream& in);
HubGraph read_hub_csv_file(const std::string& path);

}  // namespace srp
