#include "srp/hub_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace srp {

HubGraph::HubGraph(std::vector<int> hubs, std::vector<double> dist)
    : hubs_(std::move(hubs)), dist_(std::move(dist)) {
    const size_t n = hubs_.size();
    if (dist_.size() != n * n)
        throw std::invalid_argument("HubGraph: distance matrix size does not match hub count");
    int max_id = 0;
    for (int id : hubs_) {
        if (id < 1) throw std::invalid_argument("HubGraph: hub ids are 1-based");
        max_id = std::max(max_id, id);
    }
    index_by_id_.assign(max_id + 1, -1);
    for (size_t i = 0; i < n; ++i) {
        if (index_by_id_[hubs_[i]] != -1)
            throw std::invalid_argument("HubGraph: duplicate hub id " + std::to_string(hubs_[i]));
        index_by_id_[hubs_[i]] = static_cast<int>(i);
    }
    for (size_t i = 0; i < n; ++i) {
        if (dist_[i * n + i] != 0.0)
            throw std::invalid_argument("HubGraph: nonzero self-distance at hub " +
                                        std::to_string(hubs_[i]));
    }
    for (double d : dist_)
        if (!(d >= 0.0) || !std::isfinite(d))
            throw std::invalid_argument("HubGraph: distances must be finite and non-negative");
}

int HubGraph::index_of(int hub_id) const {
    if (hub_id < 0 || hub_id >= static_cast<int>(index_by_id_.size())) return -1;
    return index_by_id_[hub_id];
}

double HubGraph::dist(int hub_id_a, int hub_id_b) const {
    int a = index_of(hub_id_a);
    int b = index_of(hub_id_b);
    if (a < 0) throw std::out_of_range("HubGraph::dist: node " + std::to_string(hub_id_a) + " is not a hub");
    if (b < 0) throw std::out_of_range("HubGraph::dist: node " + std::to_string(hub_id_b) + " is not a hub");
    return dist_at(a, b);
}

double HubGraph::max_dist() const {
    double m = 0.0;
    for (double d : dist_) m = std::max(m, d);
    return m;
}

HubGraph build_hub_graph(const Network& net, std::vector<int> hubs) {
    if (hubs.empty()) {
        hubs.resize(net.node_count);
        std::iota(hubs.begin(), hubs.end(), 1);
    }
    for (int id : hubs)
        if (id < 1 || id > net.node_count)
            throw std::out_of_range("build_hub_graph: hub id " + std::to_string(id) +
                                    " outside [1, " + std::to_string(net.node_count) + "]");

    const size_t n = hubs.size();
    std::vector<double> dist(n * n, 0.0);

    // One independent Dijkstra per hub row; split rows across a few workers.
    auto fill_rows = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            std::vector<double> d = shortest_paths_from(net, hubs[i]);
            for (size_t j = 0; j < n; ++j) dist[i * n + j] = d[hubs[j]];
        }
    };
    size_t workers = std::min<size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        fill_rows(0, n);
    } else {
        std::vector<std::future<void>> parts;
        size_t chunk = (n + workers - 1) / workers;
        for (size_t at = 0; at < n; at += chunk)
            parts.push_back(std::async(std::launch::async, fill_rows, at, std::min(n, at + chunk)));
        for (auto& p : parts) p.get();
    }

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!std::isfinite(dist[i * n + j]))
                throw std::runtime_error("build_hub_graph: hub " + std::to_string(hubs[j]) +
                                         " unreachable from hub " + std::to_string(hubs[i]));
    return HubGraph(std::move(hubs), std::move(dist));
}

void write_hub_csv(std::ostream& out, const HubGraph& g, bool full_precision) {
    out << "hub";
    for (int id : g.hubs()) out << ',' << id;
    out << '\n';
    std::ostringstream num;
    num.precision(full_precision ? 17 : 2);
    if (!full_precision) num.setf(std::ios::fixed);
    for (int i = 0; i < g.hub_count(); ++i) {
        out << g.hubs()[i];
        for (int j = 0; j < g.hub_count(); ++j) {
            num.str("");
            num << g.dist_at(i, j);
            out << ',' << num.str();
        }
        out << '\n';
    }
}

HubGraph read_hub_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("hub csv: empty input");
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(s);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        return cells;
    };

    auto header = split(line);
    if (header.empty() || header[0] != "hub")
        throw std::runtime_error("hub csv: header must start with \"hub\"");
    std::vector<int> hubs;
    for (size_t k = 1; k < header.size(); ++k) hubs.push_back(std::stoi(header[k]));

    const size_t n = hubs.size();
    std::vector<double> dist(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("hub csv: expected " + std::to_string(n) + " rows, got " +
                                     std::to_string(i));
        auto cells = split(line);
        if (cells.size() != n + 1)
            throw std::runtime_error("hub csv: row " + std::to_string(i + 2) + " has " +
                                     std::to_string(cells.size()) + " cells, want " + std::to_string(n + 1));
        if (std::stoi(cells[0]) != hubs[i])
            throw std::runtime_error("hub csv: row order does not match header");
        for (size_t j = 0; j < n; ++j) dist[i * n + j] = std::stod(cells[j + 1]);
    }
    return HubGraph(std::move(hubs), std::move(dist));
}

HubGraph read_hub_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open hub csv: " + path);
    return read_hub_csv(in);
}

}  // namespace srp
