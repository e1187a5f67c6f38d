#include "resilink/checkpoint.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace resilink {

namespace {

std::string to_hexfloat(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", value);
    return buf;
}

double parse_hexfloat(const std::string& token, const std::string& context) {
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw std::invalid_argument("checkpoint: bad value '" + token + "' in " + context);
    }
    return value;
}

}  // namespace

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write checkpoint: " + path.string());
    }
    out << "resilink-checkpoint 1\n";
    for (const auto& [key, value] : checkpoint.metadata) {
        if (key.find_first_of(" \n") != std::string::npos ||
            value.find('\n') != std::string::npos) {
            throw std::invalid_argument("checkpoint metadata keys must not contain spaces and "
                                        "values must be single-line: '" + key + "'");
        }
        out << "meta " << key << " " << value << "\n";
    }
    const ParameterSet& params = checkpoint.params;
    for (std::size_t p = 0; p < params.size(); ++p) {
        const Matrix& m = params.value(p);
        if (!m.allFinite()) {
            throw std::invalid_argument("checkpoint: parameter '" + params.name(p) +
                                        "' contains non-finite values");
        }
        out << "param " << params.name(p) << " " << m.rows() << " " << m.cols() << "\n";
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                out << (c == 0 ? "" : " ") << to_hexfloat(m(r, c));
            }
            out << "\n";
        }
    }
    out << "end\n";
    if (!out) {
        throw std::runtime_error("failed while writing checkpoint: " + path.string());
    }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open checkpoint: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "resilink-checkpoint 1") {
        throw std::invalid_argument("not a resilink checkpoint: " + path.string());
    }

    Checkpoint checkpoint;
    bool saw_end = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;
        if (keyword == "end") {
            saw_end = true;
            break;
        }
        if (keyword == "meta") {
            std::string key;
            fields >> key;
            std::string value;
            std::getline(fields, value);
            if (!value.empty() && value.front() == ' ') {
                value.erase(0, 1);
            }
            checkpoint.metadata[key] = value;
        } else if (keyword == "param") {
            std::string name;
            Eigen::Index rows = 0;
            Eigen::Index cols = 0;
            if (!(fields >> name >> rows >> cols) || rows < 0 || cols < 0) {
                throw std::invalid_argument("checkpoint: malformed param header: " + line);
            }
            Matrix m(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r) {
                std::string row_line;
                if (!std::getline(in, row_line)) {
                    throw std::invalid_argument("checkpoint: truncated rows for '" + name + "'");
                }
                std::istringstream row(row_line);
                std::string token;
                for (Eigen::Index c = 0; c < cols; ++c) {
                    if (!(row >> token)) {
                        throw std::invalid_argument("checkpoint: row " + std::to_string(r) +
                                                    " of '" + name + "' is too short");
                    }
                    m(r, c) = parse_hexfloat(token, "parameter '" + name + "'");
                }
                std::string extra;
                if (row >> extra) {
                    throw std::invalid_argument("checkpoint: row " + std::to_string(r) + " of '" +
                                                name + "' has trailing values");
                }
            }
            checkpoint.params.add(name, std::move(m));
        } else {
            throw std::invalid_argument("checkpoint: unknown directive '" + keyword + "'");
        }
    }
    if (!saw_end) {
        throw std::invalid_argument("checkpoint: missing 'end' marker (truncated file?)");
    }
    return checkpoint;
}

}  // namespace resilink
