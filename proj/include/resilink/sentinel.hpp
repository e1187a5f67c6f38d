#pragma once

#include <filesystem>
#include <vector>

#include "resilink/topology.hpp"

namespace resilink {

inline constexpr int kMinSecurityWeight = 1;
inline constexpr int kMaxSecurityWeight = 200;

/// Affine map of the Beta(a, b) posterior mean onto the integer weight range:
/// w = 1 + round(199 * a / (a + b)), rounded half away from zero and clamped
/// to [1, 200]. Monotone in the mean by construction.
int weight_from_posterior(double a, double b);

/// Per-node Beta posterior over the attack probability, maintained by
/// conjugate updates from (attack_count, total_count) observations, plus the
/// derived integer security weight consumed by the reward.
class SecurityState {
public:
    SecurityState() = default;

    int node_count() const { return static_cast<int>(weights_.size()); }
    double alpha(int node) const { return a_.at(static_cast<std::size_t>(node)); }
    double beta(int node) const { return b_.at(static_cast<std::size_t>(node)); }
    int weight(int node) const { return weights_.at(static_cast<std::size_t>(node)); }
    const std::vector<int>& weights() const { return weights_; }

    double posterior_mean(int node) const;

    /// a += attacks, b += (total - attacks) for one node; weight recomputed.
    void observe(int node, long attack_count, long total_count);

    int window_id() const { return window_id_; }
    void advance_window() { ++window_id_; }

    friend SecurityState init_state(const Topology& topology, double prior_a, double prior_b);
    friend SecurityState load_security_csv(const std::filesystem::path& path);

private:
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<int> weights_;
    int window_id_ = 0;
};

/// Every node starts from the same Beta(prior_a, prior_b); both must be > 0.
SecurityState init_state(const Topology& topology, double prior_a = 1.0, double prior_b = 1.0);

/// Value-returning form of SecurityState::observe.
SecurityState update_posterior(const SecurityState& state, int node, long attack_count,
                               long total_count);

/// Snapshot as CSV: header `node_id,a,b,weight`.
void save_security_csv(const SecurityState& state, const std::filesystem::path& path);
SecurityState load_security_csv(const std::filesystem::path& path);

}  // namespace resilink
