#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace srp {

// A directed arc of a road network. Node ids are 1-based, as in TNTP files.
struct Edge {
    int from = 0;
    int to = 0;
    double cost = 0.0;
};

// Directed road network. Edges are kept exactly as parsed (parallel arcs and
// self-loops included) so that a parse -> write round trip is lossless;
// shortest-path routines ignore self-loops and let parallel arcs compete.
struct Network {
    int node_count = 0;
    std::vector<Edge> edges;
};

// Raised on malformed TNTP input; line is 1-based within the stream.
class TntpParseError : public std::runtime_error {
public:
    TntpParseError(int line, const std::string& what_arg);
    int line() const { return line_; }

private:
    int line_;
};

// Which numeric column of a TNTP link row supplies the edge cost.
// Column order in a row: init term capacity length free_flow_time ...
enum class CostColumn { capacity, length, free_flow_time };

// Parses a TNTP "net" file: <KEY> value metadata terminated by
// <END OF METADATA>, then whitespace-separated link rows. `~` starts a
// comment, `;` ends a row. Rejects (with line numbers) missing metadata,
// non-numeric or negative costs, endpoints outside [1, node_count], and a
// row count that contradicts <NUMBER OF LINKS>.
Network parse_tntp(std::istream& in, CostColumn cost = CostColumn::length);
Network parse_tntp_file(const std::string& path, CostColumn cost = CostColumn::length);

// Writes `net` back out as a TNTP file (metadata plus one row per edge, cost
// in the length and free-flow-time columns). parse(write(parse(f))) yields
// the same edge multiset as parse(f).
void write_tntp(std::ostream& out, const Network& net);

// Single-source shortest-path distances over edge costs (Dijkstra; all costs
// are >= 0 by parse-time validation). Unreachable nodes get +infinity.
// Index 0 of the result is unused padding so that result[v] works with
// 1-based node ids.
std::vector<double> shortest_paths_from(const Network& net, int source);

}  // namespace srp
