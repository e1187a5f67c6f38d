#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resilink/nn.hpp"
#include "resilink/topology.hpp"

namespace resilink {

inline constexpr std::size_t kMaxPayloadBytes = 1500;

inline const std::string kBenignClass = "benign";
inline const std::string kFloodClass = "flood";
inline const std::string kBruteForceClass = "brute_force";

struct TrafficRecord {
    int node_id = 0;
    std::vector<std::uint8_t> payload;  // 1..1500 bytes
    std::string label;
    std::uint64_t timestamp = 0;  // monotone tick
};

/// Byte-level graph of one payload: one node per distinct byte value,
/// an edge between two values whenever they are adjacent anywhere in the
/// payload (identical adjacent bytes produce no self-loop). Node features
/// are [byte_value / 255, frequency / payload_length].
struct PacketGraph {
    std::vector<std::uint8_t> byte_values;       // sorted ascending
    Matrix features;                             // n x 2
    std::vector<std::pair<int, int>> edges;      // index pairs, u < v, sorted
    std::optional<std::string> label;
};

PacketGraph packet_to_graph(const TrafficRecord& record);

/// Shannon entropy of the payload's byte distribution, in bits per byte.
double payload_entropy(const std::vector<std::uint8_t>& payload);

/// Synthetic traffic generator. Per-class payload construction:
///   benign      - uniform random bytes
///   flood       - a random 1..4 byte motif repeated to fill the payload
///   brute_force - fixed 16-byte credential-probe header ("LOGIN: admin PW:")
///                 followed by random lowercase-alphanumeric bytes
/// Class-conditional mean entropy therefore orders benign > brute_force > flood.
struct ClassMix {
    std::vector<double> probabilities;  // aligned with TrafficGenConfig::classes
};

struct TrafficGenConfig {
    std::vector<std::string> classes = {kBenignClass, kFloodClass, kBruteForceClass};
    ClassMix default_mix{{1.0, 0.0, 0.0}};
    std::map<int, ClassMix> node_mix;  // per-node overrides
    int packets_per_node = 100;
    std::size_t payload_min = 64;
    std::size_t payload_max = 256;
    std::uint64_t seed = 0;
};

void validate_gen_config(const TrafficGenConfig& config, const Topology& topology);

/// Deterministic under config.seed; every record draws from a seed derived
/// from (seed, node, packet index), so records are independent of generation
/// order. Timestamps are assigned 0, 1, 2, ... in node-major order.
std::vector<TrafficRecord> generate_traffic(const TrafficGenConfig& config,
                                            const Topology& topology);

/// CSV interchange: header `node_id,payload_hex,label,timestamp`, payload in
/// lowercase hex. The schema maps differently-named columns and optionally
/// rewrites label tokens; unmapped unknown labels are rejected.
struct CsvSchema {
    std::string node_column = "node_id";
    std::string payload_column = "payload_hex";
    std::string label_column = "label";
    std::string timestamp_column = "timestamp";  // optional in the file
    std::map<std::string, std::string> label_map;
    std::vector<std::string> classes;  // accepted labels after mapping; empty = accept all
};

std::vector<TrafficRecord> ingest_csv(const std::filesystem::path& path,
                                      const CsvSchema& schema = {});

void export_csv(const std::vector<TrafficRecord>& records, const std::filesystem::path& path);

}  // namespace resilink
