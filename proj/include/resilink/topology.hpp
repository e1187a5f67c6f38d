#pragma once

#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

namespace resilink {

inline constexpr int kMinNodeCost = 1;
inline constexpr int kMaxNodeCost = 200;

/// Undirected network graph. Every node carries an integer communication
/// cost in [1, 200]; edges are unordered pairs stored with the smaller id
/// first. Validation rejects self-loops, duplicate edges, out-of-range ids
/// and out-of-range costs.
struct Topology {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;  // canonical: u < v, sorted
    std::vector<int> cost;                   // one entry per node

    /// Sorted neighbor lists, one per node.
    std::vector<std::vector<int>> adjacency() const;

    bool has_edge(int u, int v) const;
};

/// Validates all Topology invariants; throws std::invalid_argument naming
/// the first violation. Normalizes edge order as a side effect.
void validate_topology(Topology& topology);

struct Demand {
    int src = 0;
    int dst = 0;
};

void validate_demand(const Topology& topology, const Demand& demand);

/// Text format, one directive per line:
///   nodes N
///   cost <id> <value>     (exactly one line per node)
///   edge <u> <v>
/// Blank lines and lines starting with '#' are ignored.
Topology load_topology(const std::filesystem::path& path);
Topology read_topology(std::istream& in, const std::string& source_name = "<stream>");

void save_topology(const Topology& topology, const std::filesystem::path& path);

}  // namespace resilink
