#include "resilink/topology.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

namespace resilink {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw std::invalid_argument(source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

std::vector<std::vector<int>> Topology::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
    for (const auto& [u, v] : edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& neighbors : adj) {
        std::sort(neighbors.begin(), neighbors.end());
    }
    return adj;
}

bool Topology::has_edge(int u, int v) const {
    if (u > v) {
        std::swap(u, v);
    }
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

void validate_topology(Topology& topology) {
    if (topology.node_count <= 0) {
        throw std::invalid_argument("topology: node count must be positive");
    }
    if (static_cast<int>(topology.cost.size()) != topology.node_count) {
        throw std::invalid_argument("topology: expected one cost per node, got " +
                                    std::to_string(topology.cost.size()) + " for " +
                                    std::to_string(topology.node_count) + " nodes");
    }
    for (int id = 0; id < topology.node_count; ++id) {
        const int c = topology.cost[static_cast<std::size_t>(id)];
        if (c < kMinNodeCost || c > kMaxNodeCost) {
            throw std::invalid_argument("topology: cost " + std::to_string(c) + " for node " +
                                        std::to_string(id) + " outside [1, 200]");
        }
    }
    for (auto& [u, v] : topology.edges) {
        if (u < 0 || u >= topology.node_count || v < 0 || v >= topology.node_count) {
            throw std::invalid_argument("topology: edge (" + std::to_string(u) + ", " +
                                        std::to_string(v) + ") references an unknown node");
        }
        if (u == v) {
            throw std::invalid_argument("topology: self-loop on node " + std::to_string(u));
        }
        if (u > v) {
            std::swap(u, v);
        }
    }
    std::sort(topology.edges.begin(), topology.edges.end());
    const auto dup = std::adjacent_find(topology.edges.begin(), topology.edges.end());
    if (dup != topology.edges.end()) {
        throw std::invalid_argument("topology: duplicate edge (" + std::to_string(dup->first) +
                                    ", " + std::to_string(dup->second) + ")");
    }
}

void validate_demand(const Topology& topology, const Demand& demand) {
    if (demand.src < 0 || demand.src >= topology.node_count || demand.dst < 0 ||
        demand.dst >= topology.node_count) {
        throw std::invalid_argument("demand (" + std::to_string(demand.src) + " -> " +
                                    std::to_string(demand.dst) + ") references an unknown node");
    }
    if (demand.src == demand.dst) {
        throw std::invalid_argument("demand source and destination must differ, got node " +
                                    std::to_string(demand.src) + " twice");
    }
}

Topology read_topology(std::istream& in, const std::string& source_name) {
    Topology topology;
    bool have_nodes = false;
    std::set<int> costed_nodes;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;
        if (keyword == "nodes") {
            if (have_nodes) {
                fail(source_name, line_no, "repeated 'nodes' directive");
            }
            if (!(fields >> topology.node_count)) {
                fail(source_name, line_no, "expected 'nodes N'");
            }
            have_nodes = true;
            topology.cost.assign(static_cast<std::size_t>(std::max(topology.node_count, 0)), 0);
        } else if (keyword == "cost") {
            int id = 0;
            int value = 0;
            if (!have_nodes) {
                fail(source_name, line_no, "'cost' before 'nodes'");
            }
            if (!(fields >> id >> value)) {
                fail(source_name, line_no, "expected 'cost <id> <value>'");
            }
            if (id < 0 || id >= topology.node_count) {
                fail(source_name, line_no, "cost for unknown node " + std::to_string(id));
            }
            if (!costed_nodes.insert(id).second) {
                fail(source_name, line_no, "duplicate cost for node " + std::to_string(id));
            }
            topology.cost[static_cast<std::size_t>(id)] = value;
        } else if (keyword == "edge") {
            int u = 0;
            int v = 0;
            if (!have_nodes) {
                fail(source_name, line_no, "'edge' before 'nodes'");
            }
            if (!(fields >> u >> v)) {
                fail(source_name, line_no, "expected 'edge <u> <v>'");
            }
            topology.edges.emplace_back(u, v);
        } else {
            fail(source_name, line_no, "unknown directive '" + keyword + "'");
        }
        std::string trailing;
        if (fields >> trailing) {
            fail(source_name, line_no, "unexpected trailing token '" + trailing + "'");
        }
    }

    if (!have_nodes) {
        throw std::invalid_argument(source_name + ": missing 'nodes' directive");
    }
    if (static_cast<int>(costed_nodes.size()) != topology.node_count) {
        throw std::invalid_argument(source_name + ": expected a cost line for each of " +
                                    std::to_string(topology.node_count) + " nodes, found " +
                                    std::to_string(costed_nodes.size()));
    }
    validate_topology(topology);
    return topology;
}

Topology load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open topology file: " + path.string());
    }
    return read_topology(in, path.string());
}

void save_topology(const Topology& topology, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write topology file: " + path.string());
    }
    out << "nodes " << topology.node_count << "\n";
    for (int id = 0; id < topology.node_count; ++id) {
        out << "cost " << id << " " << topology.cost[static_cast<std::size_t>(id)] << "\n";
    }
    for (const auto& [u, v] : topology.edges) {
        out << "edge " << u << " " << v << "\n";
    }
}

}  // namespace resilink
