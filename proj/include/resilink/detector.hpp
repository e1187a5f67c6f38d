#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "resilink/checkpoint.hpp"
#include "resilink/nn.hpp"
#include "resilink/traffic.hpp"

namespace resilink {

struct DetectorConfig {
    int hidden_width = 64;
    std::vector<std::string> classes = {kBenignClass, kFloodClass, kBruteForceClass};
    std::string benign_class = kBenignClass;
    double learning_rate = 0.005;
    int batch_size = 128;
    double weight_decay = 0.0;
    int epochs = 20;
    int patience = 3;             // early stop after this many epochs without
                                  // validation-accuracy improvement
    double validation_split = 0.2;  // stratified by class
    std::uint64_t seed = 0;
};

void validate_detector_config(const DetectorConfig& config);

/// Per-packet classifier: GCN -> GCN -> mean-pool -> dense -> softmax over
/// the byte graph of a payload. Mean pooling makes the score invariant to
/// node-order permutations of the graph.
struct DetectorModel {
    std::vector<std::string> classes;
    std::string benign_class;
    int hidden_width = 0;
    ParameterSet params;  // gcn1 (2 x H), gcn2 (H x H), head_w (H x K), head_b (1 x K)

    int class_index(const std::string& label) const;
};

DetectorModel init_detector(const DetectorConfig& config, std::uint64_t seed);

struct EpochMetrics {
    int epoch = 0;
    double loss = 0.0;
    double val_accuracy = 0.0;
};

struct DetectorTrainResult {
    DetectorModel model;
    std::vector<EpochMetrics> metrics;
};

/// Mini-batch training with cross-entropy loss and Adam. Deterministic under
/// config.seed (seeded init, split and per-epoch shuffles). Requires at
/// least two distinct labels among the records.
DetectorTrainResult train_detector(const std::vector<TrafficRecord>& records,
                                   const DetectorConfig& config);

/// Probability vector over model.classes, summing to 1.
std::vector<double> classify(const DetectorModel& model, const PacketGraph& graph);

/// Index into model.classes of the most probable class.
int predict_class(const DetectorModel& model, const PacketGraph& graph);

/// Half-open observation window over record timestamps.
struct TickRange {
    std::uint64_t begin = 0;
    std::uint64_t end = UINT64_MAX;
};

struct NodeTrafficCount {
    long attack_count = 0;
    long total_count = 0;
};

/// Per-node packet tallies over the window; a packet counts as attack when
/// its predicted class is any class other than the model's benign class.
std::vector<NodeTrafficCount> node_attack_ratio(const DetectorModel& model,
                                                const std::vector<TrafficRecord>& records,
                                                const TickRange& window, int node_count);

void write_detector_metrics(const std::vector<EpochMetrics>& metrics,
                            const std::filesystem::path& path);

void save_detector(const DetectorModel& model, const std::filesystem::path& path,
                   std::uint64_t seed);
DetectorModel load_detector(const std::filesystem::path& path);

}  // namespace resilink
