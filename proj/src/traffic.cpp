#include "resilink/traffic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "resilink/rng.hpp"

namespace resilink {

namespace {

constexpr std::array<std::uint8_t, 16> kBruteForceHeader = {
    'L', 'O', 'G', 'I', 'N', ':', ' ', 'a', 'd', 'm', 'i', 'n', ' ', 'P', 'W', ':'};

constexpr char kCredentialAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";

std::vector<std::uint8_t> make_payload(const std::string& label, std::size_t length, Rng& rng) {
    std::vector<std::uint8_t> payload(length);
    if (label == kFloodClass) {
        const std::size_t motif_len = 1 + rng.below(4);
        std::array<std::uint8_t, 4> motif{};
        for (std::size_t i = 0; i < motif_len; ++i) {
            motif[i] = static_cast<std::uint8_t>(rng.below(256));
        }
        for (std::size_t i = 0; i < length; ++i) {
            payload[i] = motif[i % motif_len];
        }
    } else if (label == kBruteForceClass) {
        const std::size_t header_len = std::min(kBruteForceHeader.size(), length);
        std::copy_n(kBruteForceHeader.begin(), header_len, payload.begin());
        for (std::size_t i = header_len; i < length; ++i) {
            payload[i] = static_cast<std::uint8_t>(
                kCredentialAlphabet[rng.below(sizeof(kCredentialAlphabet) - 1)]);
        }
    } else {
        for (auto& byte : payload) {
            byte = static_cast<std::uint8_t>(rng.below(256));
        }
    }
    return payload;
}

void validate_mix(const ClassMix& mix, std::size_t class_count, const std::string& context) {
    if (mix.probabilities.size() != class_count) {
        throw std::invalid_argument(context + ": mix must list one probability per class");
    }
    double sum = 0.0;
    for (const double p : mix.probabilities) {
        if (p < 0.0 || p > 1.0) {
            throw std::invalid_argument(context + ": probability " + std::to_string(p) +
                                        " outside [0, 1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument(context + ": probabilities sum to " + std::to_string(sum) +
                                    ", expected 1");
    }
}

std::size_t draw_class(const ClassMix& mix, Rng& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t i = 0; i < mix.probabilities.size(); ++i) {
        cumulative += mix.probabilities[i];
        if (u < cumulative) {
            return i;
        }
    }
    return mix.probabilities.size() - 1;  // u landed in rounding slack
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(bytes.size() * 2);
    for (const std::uint8_t b : bytes) {
        hex.push_back(digits[b >> 4]);
        hex.push_back(digits[b & 0xf]);
    }
    return hex;
}

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::vector<std::uint8_t> from_hex(const std::string& hex, const std::string& context) {
    if (hex.size() % 2 != 0) {
        throw std::invalid_argument(context + ": payload hex has odd length");
    }
    std::vector<std::uint8_t> bytes(hex.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const int hi = hex_nibble(hex[2 * i]);
        const int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument(context + ": invalid hex byte '" +
                                        hex.substr(2 * i, 2) + "'");
        }
        bytes[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return bytes;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

}  // namespace

PacketGraph packet_to_graph(const TrafficRecord& record) {
    if (record.payload.empty()) {
        throw std::invalid_argument("packet_to_graph: empty payload");
    }
    std::array<int, 256> frequency{};
    for (const std::uint8_t b : record.payload) {
        frequency[b] += 1;
    }

    PacketGraph graph;
    std::array<int, 256> node_of{};
    node_of.fill(-1);
    for (int value = 0; value < 256; ++value) {
        if (frequency[static_cast<std::size_t>(value)] > 0) {
            node_of[static_cast<std::size_t>(value)] = static_cast<int>(graph.byte_values.size());
            graph.byte_values.push_back(static_cast<std::uint8_t>(value));
        }
    }

    const auto n = static_cast<Eigen::Index>(graph.byte_values.size());
    const auto total = static_cast<double>(record.payload.size());
    graph.features.resize(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::uint8_t value = graph.byte_values[static_cast<std::size_t>(i)];
        graph.features(i, 0) = static_cast<double>(value) / 255.0;
        graph.features(i, 1) = static_cast<double>(frequency[value]) / total;
    }

    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i + 1 < record.payload.size(); ++i) {
        int u = node_of[record.payload[i]];
        int v = node_of[record.payload[i + 1]];
        if (u == v) {
            continue;  // identical adjacent bytes: no self-loop
        }
        if (u > v) {
            std::swap(u, v);
        }
        edges.emplace(u, v);
    }
    graph.edges.assign(edges.begin(), edges.end());
    if (!record.label.empty()) {
        graph.label = record.label;
    }
    return graph;
}

double payload_entropy(const std::vector<std::uint8_t>& payload) {
    if (payload.empty()) {
        return 0.0;
    }
    std::array<int, 256> frequency{};
    for (const std::uint8_t b : payload) {
        frequency[b] += 1;
    }
    const auto total = static_cast<double>(payload.size());
    double entropy = 0.0;
    for (const int count : frequency) {
        if (count > 0) {
            const double p = static_cast<double>(count) / total;
            entropy -= p * std::log2(p);
        }
    }
    return entropy;
}

void validate_gen_config(const TrafficGenConfig& config, const Topology& topology) {
    if (config.classes.empty()) {
        throw std::invalid_argument("traffic config: class list is empty");
    }
    if (std::set<std::string>(config.classes.begin(), config.classes.end()).size() !=
        config.classes.size()) {
        throw std::invalid_argument("traffic config: duplicate class names");
    }
    if (config.packets_per_node < 0) {
        throw std::invalid_argument("traffic config: packets_per_node must be >= 0");
    }
    if (config.payload_min < 1 || config.payload_max > kMaxPayloadBytes ||
        config.payload_min > config.payload_max) {
        throw std::invalid_argument("traffic config: payload bounds must satisfy 1 <= min <= max <= " +
                                    std::to_string(kMaxPayloadBytes));
    }
    validate_mix(config.default_mix, config.classes.size(), "traffic config default mix");
    for (const auto& [node, mix] : config.node_mix) {
        if (node < 0 || node >= topology.node_count) {
            throw std::invalid_argument("traffic config: mix override for unknown node " +
                                        std::to_string(node));
        }
        validate_mix(mix, config.classes.size(), "traffic config node " + std::to_string(node));
    }
}

std::vector<TrafficRecord> generate_traffic(const TrafficGenConfig& config,
                                            const Topology& topology) {
    validate_gen_config(config, topology);
    std::vector<TrafficRecord> records;
    records.reserve(static_cast<std::size_t>(topology.node_count) *
                    static_cast<std::size_t>(config.packets_per_node));
    std::uint64_t tick = 0;
    for (int node = 0; node < topology.node_count; ++node) {
        const auto mix_it = config.node_mix.find(node);
        const ClassMix& mix = mix_it == config.node_mix.end() ? config.default_mix : mix_it->second;
        for (int k = 0; k < config.packets_per_node; ++k) {
            Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(node),
                                static_cast<std::uint64_t>(k)));
            TrafficRecord record;
            record.node_id = node;
            record.label = config.classes[draw_class(mix, rng)];
            const std::size_t length =
                config.payload_min + rng.below(config.payload_max - config.payload_min + 1);
            record.payload = make_payload(record.label, length, rng);
            record.timestamp = tick++;
            records.push_back(std::move(record));
        }
    }
    return records;
}

std::vector<TrafficRecord> ingest_csv(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open traffic csv: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(path.string() + ": missing header row");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_csv_line(line);
    const auto column = [&](const std::string& name, bool required) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            if (required) {
                throw std::invalid_argument(path.string() + ": missing column '" + name + "'");
            }
            return -1;
        }
        return static_cast<int>(it - header.begin());
    };
    const int node_col = column(schema.node_column, true);
    const int payload_col = column(schema.payload_column, true);
    const int label_col = column(schema.label_column, true);
    const int time_col = column(schema.timestamp_column, false);

    std::vector<TrafficRecord> records;
    int row_no = 1;
    std::uint64_t fallback_tick = 0;
    while (std::getline(in, line)) {
        ++row_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string context = path.string() + " row " + std::to_string(row_no);
        const auto fields = split_csv_line(line);
        const int needed = std::max({node_col, payload_col, label_col, time_col});
        if (static_cast<int>(fields.size()) <= needed) {
            throw std::invalid_argument(context + ": expected at least " +
                                        std::to_string(needed + 1) + " columns, got " +
                                        std::to_string(fields.size()));
        }

        TrafficRecord record;
        try {
            record.node_id = std::stoi(fields[static_cast<std::size_t>(node_col)]);
        } catch (const std::exception&) {
            throw std::invalid_argument(context + ": bad node id '" +
                                        fields[static_cast<std::size_t>(node_col)] + "'");
        }
        record.payload = from_hex(fields[static_cast<std::size_t>(payload_col)], context);
        if (record.payload.empty()) {
            throw std::invalid_argument(context + ": empty payload");
        }
        if (record.payload.size() > kMaxPayloadBytes) {
            throw std::invalid_argument(context + ": payload longer than " +
                                        std::to_string(kMaxPayloadBytes) + " bytes");
        }

        std::string label = fields[static_cast<std::size_t>(label_col)];
        if (const auto it = schema.label_map.find(label); it != schema.label_map.end()) {
            label = it->second;
        }
        if (!schema.classes.empty() &&
            std::find(schema.classes.begin(), schema.classes.end(), label) ==
                schema.classes.end()) {
            throw std::invalid_argument(context + ": unknown label '" + label + "'");
        }
        record.label = std::move(label);

        if (time_col >= 0) {
            try {
                record.timestamp = std::stoull(fields[static_cast<std::size_t>(time_col)]);
            } catch (const std::exception&) {
                throw std::invalid_argument(context + ": bad timestamp '" +
                                            fields[static_cast<std::size_t>(time_col)] + "'");
            }
        } else {
            record.timestamp = fallback_tick++;
        }
        records.push_back(std::move(record));
    }
    return records;
}

void export_csv(const std::vector<TrafficRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write traffic csv: " + path.string());
    }
    out << "node_id,payload_hex,label,timestamp\n";
    for (const auto& record : records) {
        out << record.node_id << "," << to_hex(record.payload) << "," << record.label << ","
            << record.timestamp << "\n";
    }
}

}  // namespace resilink
