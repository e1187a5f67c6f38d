#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "resilink/topology.hpp"

namespace resilink {

/// Simple path: consecutive nodes adjacent, no node repeated.
struct Path {
    std::vector<int> nodes;

    std::size_t length() const { return nodes.size(); }
    bool operator==(const Path&) const = default;
};

bool is_simple_path(const Topology& topology, const Demand& demand, const Path& path);

struct PathEnumOptions {
    /// Truncate the canonical enumeration after this many paths.
    std::optional<std::size_t> max_paths;
    /// Enumerating more than this many paths is a configuration error.
    std::size_t hard_cap = 100'000;
};

/// All simple paths from demand.src to demand.dst, in lexicographic order of
/// the node sequence. Deterministic for a given topology. Throws
/// std::invalid_argument when the count exceeds options.hard_cap.
std::vector<Path> enumerate_simple_paths(const Topology& topology, const Demand& demand,
                                         const PathEnumOptions& options = {});

/// One routing decision: a concrete path per demand.
struct PathPairAction {
    Path p1;
    Path p2;
};

/// Cartesian product of the two demands' path lists. Action index k maps to
/// (k / |P2|, k % |P2|), i.e. the first demand's path index varies slowest.
struct ActionSpace {
    std::vector<Path> paths_1;
    std::vector<Path> paths_2;

    std::size_t action_count() const { return paths_1.size() * paths_2.size(); }
    std::pair<std::size_t, std::size_t> index_pair(std::size_t action) const;
    PathPairAction action_at(std::size_t action) const;
};

ActionSpace build_action_space(const Topology& topology, const Demand& demand1,
                               const Demand& demand2, const PathEnumOptions& options = {});

/// Number of nodes the two paths share.
int overlap_count(const Path& p1, const Path& p2);

struct RewardSpec {
    double alpha = 100.0;  // overlap penalty factor
};

/// R = -sum_{n in p1}(w_n + c_n) - sum_{m in p2}(w_m + c_m) - alpha * O,
/// with every node of each path (endpoints included) contributing once per
/// path it appears on. `weights` maps node id to its security weight; zeros
/// are permitted for cost-only counterfactuals.
double compute_reward(const Topology& topology, std::span<const int> weights,
                      const PathPairAction& action, const RewardSpec& spec);

}  // namespace resilink
