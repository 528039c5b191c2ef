#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tempcast::cli {

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

std::string toolkit_version();

/// Record written next to every CLI output. `rerun_args` reproduces the
/// outputs when the output location flag is appended; nothing in the
/// manifest depends on wall-clock time or the output location.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config;
    std::string input_path;
    std::string input_sha256;
    unsigned long long seed = 0;
    std::vector<std::string> artifacts;
    std::vector<std::string> rerun_args;

    nlohmann::ordered_json to_json() const;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace tempcast::cli
