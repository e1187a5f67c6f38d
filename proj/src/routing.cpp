#include "resilink/routing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace resilink {

bool is_simple_path(const Topology& topology, const Demand& demand, const Path& path) {
    if (path.nodes.size() < 2) {
        return false;
    }
    if (path.nodes.front() != demand.src || path.nodes.back() != demand.dst) {
        return false;
    }
    std::vector<bool> seen(static_cast<std::size_t>(topology.node_count), false);
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        const int n = path.nodes[i];
        if (n < 0 || n >= topology.node_count || seen[static_cast<std::size_t>(n)]) {
            return false;
        }
        seen[static_cast<std::size_t>(n)] = true;
        if (i > 0 && !topology.has_edge(path.nodes[i - 1], n)) {
            return false;
        }
    }
    return true;
}

std::vector<Path> enumerate_simple_paths(const Topology& topology, const Demand& demand,
                                         const PathEnumOptions& options) {
    validate_demand(topology, demand);
    if (options.max_paths && *options.max_paths == 0) {
        return {};
    }

    const auto adjacency = topology.adjacency();
    std::vector<Path> result;
    std::vector<int> stack{demand.src};
    std::vector<bool> visited(static_cast<std::size_t>(topology.node_count), false);
    visited[static_cast<std::size_t>(demand.src)] = true;

    // Iterative DFS trying neighbors in ascending id order, which emits
    // paths in lexicographic order of the node sequence.
    std::vector<std::size_t> next_neighbor{0};
    while (!stack.empty()) {
        const int node = stack.back();
        const auto& neighbors = adjacency[static_cast<std::size_t>(node)];
        if (next_neighbor.back() >= neighbors.size()) {
            visited[static_cast<std::size_t>(node)] = false;
            stack.pop_back();
            next_neighbor.pop_back();
            continue;
        }
        const int candidate = neighbors[next_neighbor.back()++];
        if (candidate == demand.dst) {
            Path path;
            path.nodes = stack;
            path.nodes.push_back(demand.dst);
            result.push_back(std::move(path));
            if (options.max_paths && result.size() >= *options.max_paths) {
                return result;
            }
            if (result.size() > options.hard_cap) {
                throw std::invalid_argument(
                    "path enumeration exceeded the configured cap of " +
                    std::to_string(options.hard_cap) + " paths for demand " +
                    std::to_string(demand.src) + " -> " + std::to_string(demand.dst));
            }
            continue;
        }
        if (!visited[static_cast<std::size_t>(candidate)]) {
            visited[static_cast<std::size_t>(candidate)] = true;
            stack.push_back(candidate);
            next_neighbor.push_back(0);
        }
    }
    return result;
}

std::pair<std::size_t, std::size_t> ActionSpace::index_pair(std::size_t action) const {
    if (action >= action_count()) {
        throw std::invalid_argument("action index " + std::to_string(action) +
                                    " outside space of size " + std::to_string(action_count()));
    }
    return {action / paths_2.size(), action % paths_2.size()};
}

PathPairAction ActionSpace::action_at(std::size_t action) const {
    const auto [i, j] = index_pair(action);
    return {paths_1[i], paths_2[j]};
}

ActionSpace build_action_space(const Topology& topology, const Demand& demand1,
                               const Demand& demand2, const PathEnumOptions& options) {
    ActionSpace space;
    space.paths_1 = enumerate_simple_paths(topology, demand1, options);
    space.paths_2 = enumerate_simple_paths(topology, demand2, options);
    if (space.paths_1.empty()) {
        throw std::invalid_argument("demand " + std::to_string(demand1.src) + " -> " +
                                    std::to_string(demand1.dst) + " has no simple path");
    }
    if (space.paths_2.empty()) {
        throw std::invalid_argument("demand " + std::to_string(demand2.src) + " -> " +
                                    std::to_string(demand2.dst) + " has no simple path");
    }
    return space;
}

int overlap_count(const Path& p1, const Path& p2) {
    std::vector<int> a = p1.nodes;
    std::vector<int> b = p2.nodes;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<int> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    return static_cast<int>(shared.size());
}

double compute_reward(const Topology& topology, std::span<const int> weights,
                      const PathPairAction& action, const RewardSpec& spec) {
    if (static_cast<int>(weights.size()) != topology.node_count) {
        throw std::invalid_argument("reward weights must cover all " +
                                    std::to_string(topology.node_count) + " nodes, got " +
                                    std::to_string(weights.size()));
    }
    if (spec.alpha < 0.0) {
        throw std::invalid_argument("overlap penalty factor must be nonnegative");
    }
    double total = 0.0;
    for (const Path* path : {&action.p1, &action.p2}) {
        for (const int n : path->nodes) {
            const auto id = static_cast<std::size_t>(n);
            total -= static_cast<double>(weights[id] + topology.cost[id]);
        }
    }
    total -= spec.alpha * static_cast<double>(overlap_count(action.p1, action.p2));
    return total;
}

}  // namespace resilink
