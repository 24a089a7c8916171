#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "chargenet/config.hpp"

namespace chargenet::cli {

/// Writes `contents` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

struct RunManifest {
    std::string command;
    std::string config_path;
    ConfigMap config;  ///< fully resolved, absolute paths
    std::uint64_t seed = 0;
    std::string version;
    std::vector<std::string> outputs;
    double wall_clock_s = 0.0;
    std::string started_utc;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// Throws DataSourceError for an unreadable file, ConfigError for bad contents.
RunManifest read_manifest(const std::filesystem::path& path);

std::string utc_timestamp(std::chrono::system_clock::time_point t);

}  // namespace chargenet::cli
