#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "resilink/nn.hpp"

namespace resilink {

/// Self-describing model container: string metadata (seed, hyperparameters,
/// class lists) plus named parameter matrices. Values are serialized as C99
/// hex floats so save -> load round-trips bit-exactly.
///
/// Layout (UTF-8 text):
///   resilink-checkpoint 1
///   meta <key> <value...>            (value runs to end of line)
///   param <name> <rows> <cols>       (followed by one line per row,
///                                     cols hex floats separated by spaces)
///   end
struct Checkpoint {
    std::map<std::string, std::string> metadata;
    ParameterSet params;
};

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace resilink
