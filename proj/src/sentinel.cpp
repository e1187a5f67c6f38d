#include "resilink/sentinel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace resilink {

int weight_from_posterior(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("posterior parameters must be positive, got a=" +
                                    std::to_string(a) + " b=" + std::to_string(b));
    }
    const double mean = a / (a + b);
    const long w = 1 + std::lround(199.0 * mean);
    return static_cast<int>(std::clamp<long>(w, kMinSecurityWeight, kMaxSecurityWeight));
}

double SecurityState::posterior_mean(int node) const {
    const auto i = static_cast<std::size_t>(node);
    return a_.at(i) / (a_.at(i) + b_.at(i));
}

void SecurityState::observe(int node, long attack_count, long total_count) {
    if (node < 0 || node >= node_count()) {
        throw std::invalid_argument("security state has no node " + std::to_string(node));
    }
    if (attack_count < 0 || total_count < 0 || attack_count > total_count) {
        throw std::invalid_argument("inconsistent observation: " + std::to_string(attack_count) +
                                    " attacks out of " + std::to_string(total_count) + " packets");
    }
    const auto i = static_cast<std::size_t>(node);
    a_[i] += static_cast<double>(attack_count);
    b_[i] += static_cast<double>(total_count - attack_count);
    weights_[i] = weight_from_posterior(a_[i], b_[i]);
}

SecurityState init_state(const Topology& topology, double prior_a, double prior_b) {
    if (!(prior_a > 0.0) || !(prior_b > 0.0)) {
        throw std::invalid_argument("prior parameters must be positive, got a=" +
                                    std::to_string(prior_a) + " b=" + std::to_string(prior_b));
    }
    SecurityState state;
    const auto n = static_cast<std::size_t>(topology.node_count);
    state.a_.assign(n, prior_a);
    state.b_.assign(n, prior_b);
    state.weights_.assign(n, weight_from_posterior(prior_a, prior_b));
    return state;
}

SecurityState update_posterior(const SecurityState& state, int node, long attack_count,
                               long total_count) {
    SecurityState updated = state;
    updated.observe(node, attack_count, total_count);
    return updated;
}

void save_security_csv(const SecurityState& state, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write security snapshot: " + path.string());
    }
    char buf[64];
    out << "node_id,a,b,weight\n";
    for (int node = 0; node < state.node_count(); ++node) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d\n", node, state.alpha(node),
                      state.beta(node), state.weight(node));
        out << buf;
    }
}

SecurityState load_security_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open security snapshot: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("node_id,a,b,weight", 0) != 0) {
        throw std::invalid_argument(path.string() + ": expected header 'node_id,a,b,weight'");
    }
    SecurityState state;
    int row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string token;
        int node = 0;
        double a = 0.0;
        double b = 0.0;
        int weight = 0;
        try {
            std::getline(fields, token, ',');
            node = std::stoi(token);
            std::getline(fields, token, ',');
            a = std::stod(token);
            std::getline(fields, token, ',');
            b = std::stod(token);
            std::getline(fields, token, ',');
            weight = std::stoi(token);
        } catch (const std::exception&) {
            throw std::invalid_argument(path.string() + " row " + std::to_string(row_no) +
                                        ": malformed security snapshot row");
        }
        if (node != state.node_count()) {
            throw std::invalid_argument(path.string() + " row " + std::to_string(row_no) +
                                        ": node ids must be contiguous from 0");
        }
        if (weight != weight_from_posterior(a, b)) {
            throw std::invalid_argument(path.string() + " row " + std::to_string(row_no) +
                                        ": stored weight disagrees with (a, b)");
        }
        state.a_.push_back(a);
        state.b_.push_back(b);
        state.weights_.push_back(weight);
    }
    if (state.node_count() == 0) {
        throw std::invalid_argument(path.string() + ": no rows");
    }
    return state;
}

}  // namespace resilink
