#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resilink/rng.hpp"

namespace resilink {

// All numerics are 64-bit. Matrices are dense; the graphs here stay small
// (<= 256 nodes for packet graphs, <= 50 for topologies).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { None, Relu };

template <typename Derived>
auto relu(const Eigen::MatrixBase<Derived>& x) {
    return x.cwiseMax(typename Derived::Scalar(0));
}

Matrix apply_activation(const Matrix& pre_activation, Activation activation);

/// upstream (elementwise *) activation'(pre_activation)
Matrix activation_backward(const Matrix& pre_activation, const Matrix& upstream,
                           Activation activation);

/// Symmetric normalization D^(-1/2) (A + I) D^(-1/2) of an undirected 0/1
/// adjacency, where D is the degree matrix of A + I. Entry (i, j) is
/// 1/sqrt(d_i d_j) when i = j or (i, j) is an edge, and 0 otherwise.
struct NormalizedAdjacency {
    int node_count = 0;
    Matrix matrix;
};

NormalizedAdjacency normalize_adjacency(int node_count,
                                        std::span<const std::pair<int, int>> edges);

// ---------------------------------------------------------------------------
// Layers. Each forward optionally records what its backward needs; calling a
// backward with an empty cache throws std::logic_error.

struct GcnLayerCache {
    Matrix input;            // H, N x F
    Matrix aggregated;       // A_hat * H
    Matrix pre_activation;   // A_hat * H * W
};

/// activation(A_hat * features * weights); features N x F, weights F x F'.
Matrix gcn_layer_forward(const NormalizedAdjacency& adj, const Matrix& features,
                         const Matrix& weights, Activation activation,
                         GcnLayerCache* cache = nullptr);

struct GcnLayerGrads {
    Matrix d_features;
    Matrix d_weights;
};

GcnLayerGrads gcn_layer_backward(const NormalizedAdjacency& adj, const Matrix& weights,
                                 const GcnLayerCache& cache, const Matrix& upstream,
                                 Activation activation);

struct DenseLayerCache {
    Matrix input;
    Matrix pre_activation;
};

/// activation(input * weights + bias); bias is a 1 x K row broadcast over rows.
Matrix dense_forward(const Matrix& input, const Matrix& weights, const Matrix& bias,
                     Activation activation, DenseLayerCache* cache = nullptr);

struct DenseLayerGrads {
    Matrix d_input;
    Matrix d_weights;
    Matrix d_bias;
};

DenseLayerGrads dense_backward(const Matrix& weights, const DenseLayerCache& cache,
                               const Matrix& upstream, Activation activation);

struct MeanPoolCache {
    Eigen::Index rows = 0;
};

/// Column-wise mean over rows: N x F -> 1 x F.
Matrix mean_pool(const Matrix& input, MeanPoolCache* cache = nullptr);
Matrix mean_pool_backward(const MeanPoolCache& cache, const Matrix& upstream);

// ---------------------------------------------------------------------------
// Loss.

/// Row-wise softmax (numerically stable).
Matrix softmax_rows(const Matrix& logits);

struct CrossEntropyResult {
    double loss = 0.0;         // mean over rows
    Matrix d_logits;           // (softmax - onehot) / batch
};

CrossEntropyResult softmax_cross_entropy(const Matrix& logits, std::span<const int> labels);

// ---------------------------------------------------------------------------
// Parameters and optimization.

/// Named parameter matrices with matching gradient buffers. Iteration order
/// is insertion order, which fixes the update and checkpoint layout.
class ParameterSet {
public:
    Matrix& add(std::string name, Matrix value);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    Matrix& value(std::size_t i) { return values_[i]; }
    const Matrix& value(std::size_t i) const { return values_[i]; }
    Matrix& grad(std::size_t i) { return grads_[i]; }
    const Matrix& grad(std::size_t i) const { return grads_[i]; }

    bool contains(std::string_view name) const;
    Matrix& value(std::string_view name);
    const Matrix& value(std::string_view name) const;
    Matrix& grad(std::string_view name);

    void zero_grads();
    std::size_t scalar_count() const;

private:
    std::size_t index_of(std::string_view name) const;

    std::vector<std::string> names_;
    std::vector<Matrix> values_;
    std::vector<Matrix> grads_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Uniform init in +/- sqrt(6 / (fan_in + fan_out)).
Matrix glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng);

struct AdamConfig {
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double weight_decay = 0.0;  // L2 term added to the gradient
};

class AdamState {
public:
    AdamState() = default;
    explicit AdamState(AdamConfig config) : config_(config) {}

    const AdamConfig& config() const { return config_; }
    long step_count() const { return step_; }

    friend void adam_step(ParameterSet& params, AdamState& state);

private:
    AdamConfig config_;
    long step_ = 0;
    std::vector<Matrix> first_moment_;
    std::vector<Matrix> second_moment_;
};

/// One Adam update with bias correction, consuming the gradients currently
/// stored in `params`. Moment buffers are lazily shaped on the first call.
void adam_step(ParameterSet& params, AdamState& state);

// ---------------------------------------------------------------------------
// Gradient verification.

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::string worst_parameter;
    bool passed = false;
};

/// Central-difference check of the gradients stored in `params` against
/// `loss_fn`, which must recompute the scalar loss from the current parameter
/// values. Coordinates where both gradients are below 1e-7 in magnitude are
/// skipped; relu kinks inside the step window are the caller's concern.
GradCheckReport finite_difference_check(const std::function<double()>& loss_fn,
                                        ParameterSet& params, double tolerance,
                                        double step = 1e-5);

}  // namespace resilink
