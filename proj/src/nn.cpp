#include "resilink/nn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resilink {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) {
        throw std::invalid_argument(msg);
    }
}

void require_recorded(bool ok) {
    if (!ok) {
        throw std::logic_error("backward called without a recorded forward pass");
    }
}

std::string shape_of(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix apply_activation(const Matrix& pre_activation, Activation activation) {
    switch (activation) {
        case Activation::None:
            return pre_activation;
        case Activation::Relu:
            return relu(pre_activation);
    }
    throw std::logic_error("unknown activation");
}

Matrix activation_backward(const Matrix& pre_activation, const Matrix& upstream,
                           Activation activation) {
    switch (activation) {
        case Activation::None:
            return upstream;
        case Activation::Relu:
            return ((pre_activation.array() > 0.0).cast<double>() * upstream.array()).matrix();
    }
    throw std::logic_error("unknown activation");
}

NormalizedAdjacency normalize_adjacency(int node_count,
                                        std::span<const std::pair<int, int>> edges) {
    require(node_count > 0, "normalize_adjacency: node count must be positive");
    Matrix a = Matrix::Identity(node_count, node_count);  // self-loops
    for (const auto& [u, v] : edges) {
        require(u >= 0 && u < node_count && v >= 0 && v < node_count,
                "normalize_adjacency: edge endpoint out of range");
        require(u != v, "normalize_adjacency: input must not contain self-loops");
        a(u, v) = 1.0;
        a(v, u) = 1.0;
    }
    const Vector inv_sqrt_degree = a.rowwise().sum().array().rsqrt().matrix();
    NormalizedAdjacency result;
    result.node_count = node_count;
    result.matrix = inv_sqrt_degree.asDiagonal() * a * inv_sqrt_degree.asDiagonal();
    return result;
}

Matrix gcn_layer_forward(const NormalizedAdjacency& adj, const Matrix& features,
                         const Matrix& weights, Activation activation, GcnLayerCache* cache) {
    require(features.rows() == adj.node_count,
            "gcn_layer_forward: features have " + std::to_string(features.rows()) +
                " rows but the graph has " + std::to_string(adj.node_count) + " nodes");
    require(weights.rows() == features.cols(),
            "gcn_layer_forward: weights " + shape_of(weights) + " do not accept features " +
                shape_of(features));
    Matrix aggregated = adj.matrix * features;
    Matrix pre_activation = aggregated * weights;
    Matrix out = apply_activation(pre_activation, activation);
    if (cache != nullptr) {
        cache->input = features;
        cache->aggregated = std::move(aggregated);
        cache->pre_activation = std::move(pre_activation);
    }
    return out;
}

GcnLayerGrads gcn_layer_backward(const NormalizedAdjacency& adj, const Matrix& weights,
                                 const GcnLayerCache& cache, const Matrix& upstream,
                                 Activation activation) {
    require_recorded(cache.input.size() > 0);
    const Matrix d_pre = activation_backward(cache.pre_activation, upstream, activation);
    GcnLayerGrads grads;
    grads.d_weights = cache.aggregated.transpose() * d_pre;
    grads.d_features = adj.matrix.transpose() * (d_pre * weights.transpose());
    return grads;
}

Matrix dense_forward(const Matrix& input, const Matrix& weights, const Matrix& bias,
                     Activation activation, DenseLayerCache* cache) {
    require(weights.rows() == input.cols(), "dense_forward: weights " + shape_of(weights) +
                                                " do not accept input " + shape_of(input));
    require(bias.rows() == 1 && bias.cols() == weights.cols(),
            "dense_forward: bias " + shape_of(bias) + " must be 1x" +
                std::to_string(weights.cols()));
    Matrix pre_activation = input * weights;
    pre_activation.rowwise() += bias.row(0);
    Matrix out = apply_activation(pre_activation, activation);
    if (cache != nullptr) {
        cache->input = input;
        cache->pre_activation = std::move(pre_activation);
    }
    return out;
}

DenseLayerGrads dense_backward(const Matrix& weights, const DenseLayerCache& cache,
                               const Matrix& upstream, Activation activation) {
    require_recorded(cache.input.size() > 0);
    const Matrix d_pre = activation_backward(cache.pre_activation, upstream, activation);
    DenseLayerGrads grads;
    grads.d_weights = cache.input.transpose() * d_pre;
    grads.d_bias = d_pre.colwise().sum();
    grads.d_input = d_pre * weights.transpose();
    return grads;
}

Matrix mean_pool(const Matrix& input, MeanPoolCache* cache) {
    require(input.rows() > 0, "mean_pool: input must have at least one row");
    if (cache != nullptr) {
        cache->rows = input.rows();
    }
    return input.colwise().mean();
}

Matrix mean_pool_backward(const MeanPoolCache& cache, const Matrix& upstream) {
    require_recorded(cache.rows > 0);
    return upstream.replicate(cache.rows, 1) / static_cast<double>(cache.rows);
}

Matrix softmax_rows(const Matrix& logits) {
    const Matrix shifted = logits.colwise() - logits.rowwise().maxCoeff();
    const Matrix exps = shifted.array().exp().matrix();
    const Vector sums = exps.rowwise().sum();
    return (exps.array().colwise() / sums.array()).matrix();
}

CrossEntropyResult softmax_cross_entropy(const Matrix& logits, std::span<const int> labels) {
    require(static_cast<Eigen::Index>(labels.size()) == logits.rows(),
            "softmax_cross_entropy: one label per logits row required");
    const auto batch = static_cast<double>(logits.rows());
    const Matrix shifted = logits.colwise() - logits.rowwise().maxCoeff();
    const Matrix exps = shifted.array().exp().matrix();
    const Vector sums = exps.rowwise().sum();

    CrossEntropyResult result;
    result.d_logits = (exps.array().colwise() / sums.array()).matrix();
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const int label = labels[static_cast<std::size_t>(i)];
        require(label >= 0 && label < logits.cols(),
                "softmax_cross_entropy: label " + std::to_string(label) + " outside " +
                    std::to_string(logits.cols()) + " classes");
        result.loss += std::log(sums(i)) - shifted(i, label);
        result.d_logits(i, label) -= 1.0;
    }
    result.loss /= batch;
    result.d_logits /= batch;
    return result;
}

Matrix& ParameterSet::add(std::string name, Matrix value) {
    require(!index_.contains(name), "parameter '" + name + "' already registered");
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
    grads_.push_back(Matrix::Zero(value.rows(), value.cols()));
    values_.push_back(std::move(value));
    return values_.back();
}

bool ParameterSet::contains(std::string_view name) const {
    return index_.contains(std::string(name));
}

std::size_t ParameterSet::index_of(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    require(it != index_.end(), "unknown parameter '" + std::string(name) + "'");
    return it->second;
}

Matrix& ParameterSet::value(std::string_view name) { return values_[index_of(name)]; }
const Matrix& ParameterSet::value(std::string_view name) const { return values_[index_of(name)]; }
Matrix& ParameterSet::grad(std::string_view name) { return grads_[index_of(name)]; }

void ParameterSet::zero_grads() {
    for (auto& g : grads_) {
        g.setZero();
    }
}

std::size_t ParameterSet::scalar_count() const {
    std::size_t total = 0;
    for (const auto& v : values_) {
        total += static_cast<std::size_t>(v.size());
    }
    return total;
}

Matrix glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = rng.uniform(-limit, limit);
        }
    }
    return m;
}

void adam_step(ParameterSet& params, AdamState& state) {
    const AdamConfig& cfg = state.config_;
    if (state.first_moment_.empty()) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            const auto& v = params.value(i);
            state.first_moment_.push_back(Matrix::Zero(v.rows(), v.cols()));
            state.second_moment_.push_back(Matrix::Zero(v.rows(), v.cols()));
        }
    }
    require(state.first_moment_.size() == params.size(),
            "adam_step: optimizer state does not match the parameter set");

    state.step_ += 1;
    const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step_));
    const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        Matrix& theta = params.value(i);
        Matrix g = params.grad(i);
        if (cfg.weight_decay != 0.0) {
            g += cfg.weight_decay * theta;
        }
        Matrix& m = state.first_moment_[i];
        Matrix& v = state.second_moment_[i];
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
        v = (cfg.beta2 * v.array() + (1.0 - cfg.beta2) * g.array().square()).matrix();
        const Matrix m_hat = m / bias1;
        const Matrix v_hat = v / bias2;
        theta.array() -= cfg.learning_rate * m_hat.array() / (v_hat.array().sqrt() + cfg.epsilon);
    }
}

GradCheckReport finite_difference_check(const std::function<double()>& loss_fn,
                                        ParameterSet& params, double tolerance, double step) {
    GradCheckReport report;
    for (std::size_t p = 0; p < params.size(); ++p) {
        Matrix& value = params.value(p);
        const Matrix& analytic = params.grad(p);
        for (Eigen::Index i = 0; i < value.size(); ++i) {
            const double original = value(i);
            value(i) = original + step;
            const double plus = loss_fn();
            value(i) = original - step;
            const double minus = loss_fn();
            value(i) = original;

            const double fd = (plus - minus) / (2.0 * step);
            const double an = analytic(i);
            const double scale = std::max(std::abs(fd), std::abs(an));
            if (scale < 1e-7) {
                continue;  // both effectively zero
            }
            const double rel = std::abs(fd - an) / scale;
            if (rel > report.max_rel_error) {
                report.max_rel_error = rel;
                report.worst_parameter = params.name(p) + "[" + std::to_string(i) + "]";
            }
        }
    }
    report.passed = report.max_rel_error < tolerance;
    return report;
}

}  // namespace resilink
