#include "srp/tntp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

namespace srp {
namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Strips `~` comments and `;` terminators, leaving bare fields.
std::string strip_markup(const std::string& raw) {
    std::string s = raw;
    if (auto tilde = s.find('~'); tilde != std::string::npos) s.erase(tilde);
    std::replace(s.begin(), s.end(), ';', ' ');
    return trim(s);
}

double parse_number(const std::string& tok, int line, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw TntpParseError(line, std::string("expected a number for ") + what + ", got \"" + tok + "\"");
    return value;
}

int parse_int(const std::string& tok, int line, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw TntpParseError(line, std::string("expected an integer for ") + what + ", got \"" + tok + "\"");
    return value;
}

}  // namespace

TntpParseError::TntpParseError(int line, const std::string& what_arg)
    : std::runtime_error("tntp:" + std::to_string(line) + ": " + what_arg), line_(line) {}

Network parse_tntp(std::istream& in, CostColumn cost) {
    // Field position of the cost within a link row (init term capacity length fftt ...).
    const size_t cost_field = cost == CostColumn::capacity ? 2 : cost == CostColumn::length ? 3 : 4;

    Network net;
    int declared_links = -1;
    bool saw_end_of_metadata = false;
    bool saw_node_count = false;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip_markup(raw);
        if (line.empty()) continue;

        if (line.front() == '<') {
            auto close = line.find('>');
            if (close == std::string::npos)
                throw TntpParseError(line_no, "unterminated metadata tag");
            std::string key = trim(line.substr(1, close - 1));
            std::string value = trim(line.substr(close + 1));
            if (key == "END OF METADATA") {
                saw_end_of_metadata = true;
            } else if (key == "NUMBER OF NODES") {
                net.node_count = parse_int(value, line_no, "<NUMBER OF NODES>");
                if (net.node_count < 0)
                    throw TntpParseError(line_no, "negative node count");
                saw_node_count = true;
            } else if (key == "NUMBER OF LINKS") {
                declared_links = parse_int(value, line_no, "<NUMBER OF LINKS>");
            }
            // Other tags (<NUMBER OF ZONES>, <FIRST THRU NODE>, ...) carry
            // assignment-model data we have no use for.
            continue;
        }

        if (!saw_end_of_metadata)
            throw TntpParseError(line_no, "link row before <END OF METADATA>");
        if (!saw_node_count)
            throw TntpParseError(line_no, "link row without <NUMBER OF NODES>");

        std::istringstream fields(line);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.size() < cost_field + 1)
            throw TntpParseError(line_no, "link row has " + std::to_string(tok.size()) +
                                              " fields, need at least " + std::to_string(cost_field + 1));

        Edge e;
        e.from = parse_int(tok[0], line_no, "init node");
        e.to = parse_int(tok[1], line_no, "term node");
        e.cost = parse_number(tok[cost_field], line_no, "edge cost");
        if (e.from < 1 || e.from > net.node_count)
            throw TntpParseError(line_no, "init node " + std::to_string(e.from) + " outside [1, " +
                                              std::to_string(net.node_count) + "]");
        if (e.to < 1 || e.to > net.node_count)
            throw TntpParseError(line_no, "term node " + std::to_string(e.to) + " outside [1, " +
                                              std::to_string(net.node_count) + "]");
        if (e.cost < 0.0)
            throw TntpParseError(line_no, "negative edge cost " + tok[cost_field]);
        net.edges.push_back(e);
    }

    if (!saw_end_of_metadata)
        throw TntpParseError(line_no, "missing <END OF METADATA>");
    if (declared_links >= 0 && static_cast<int>(net.edges.size()) != declared_links)
        throw TntpParseError(line_no, "<NUMBER OF LINKS> says " + std::to_string(declared_links) +
                                          " but file has " + std::to_string(net.edges.size()));
    return net;
}

Network parse_tntp_file(const std::string& path, CostColumn cost) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open network file: " + path);
    return parse_tntp(in, cost);
}

void write_tntp(std::ostream& out, const Network& net) {
    out << "<NUMBER OF NODES> " << net.node_count << "\n";
    out << "<NUMBER OF LINKS> " << net.edges.size() << "\n";
    out << "<END OF METADATA>\n\n";
    out << "~ init term capacity length fftt b power speed toll type ;\n";
    out.precision(17);
    for (const Edge& e : net.edges) {
        out << '\t' << e.from << '\t' << e.to << '\t' << 1 << '\t' << e.cost << '\t' << e.cost
            << "\t0\t0\t0\t0\t1\t;\n";
    }
}

std::vector<double> shortest_paths_from(const Network& net, int source) {
    if (source < 1 || source > net.node_count)
        throw std::out_of_range("shortest_paths_from: source " + std::to_string(source) +
                                " outside [1, " + std::to_string(net.node_count) + "]");

    // Adjacency in CSR shape; self-loops dropped (they never relax anything),
    // parallel arcs all kept (the cheaper one wins naturally).
    std::vector<int> head(net.node_count + 2, 0);
    for (const Edge& e : net.edges)
        if (e.from != e.to) ++head[e.from + 1];
    for (int v = 1; v <= net.node_count; ++v) head[v + 1] += head[v];
    std::vector<std::pair<int, double>> adj(head[net.node_count + 1]);
    {
        std::vector<int> cursor(head.begin(), head.end());
        for (const Edge& e : net.edges)
            if (e.from != e.to) adj[cursor[e.from]++] = {e.to, e.cost};
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(net.node_count + 1, kInf);
    dist[source] = 0.0;

    using Item = std::pair<double, int>;  // (distance, node), min-heap
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;  // stale entry
        for (int k = head[v]; k < head[v + 1]; ++k) {
            auto [w, c] = adj[k];
            if (d + c < dist[w]) {
                dist[w] = d + c;
                heap.push({dist[w], w});
            }
        }
    }
    return dist;
}

}  // namespace srp
