#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chargenet/experiment.hpp"
#include "chargenet/trip_model.hpp"

namespace chargenet {

/// Flat key -> value view of a scenario file (INI without sections; '#' and
/// ';' start comments).
using ConfigMap = std::map<std::string, std::string>;

/// Throws DataSourceError if the file is unreadable, ConfigError if malformed.
ConfigMap read_config_file(const std::filesystem::path& path);
ConfigMap parse_config_text(const std::string& text);

/// Co-located redundancy request: duplicate every point isolated at `radius_km`
/// (the reserve-derived radius when unset).
struct RedundancySpec {
    std::optional<double> radius_km;
};

struct RunConfig {
    ScenarioConfig scenario;
    std::filesystem::path population;
    std::filesystem::path network;
    std::vector<std::size_t> n_ev_grid{1000};
    TripLengthParams trip;

    std::vector<double> fault_pf_grid{0.01, 0.02, 0.05, 0.1, 0.2, 0.3};
    std::size_t fault_replicates = 100;
    std::uint64_t fault_seed = 7;
    std::optional<RedundancySpec> redundancy;

    CapacityOptions capacity;
    InfraCostModel cost;
    double cost_users = 36000.0;

    std::filesystem::path output_dir = "out";
};

/// Builds a validated RunConfig. Relative paths are resolved against `base_dir`.
/// Unknown keys and bad values throw ConfigError.
RunConfig resolve_config(const ConfigMap& map, const std::filesystem::path& base_dir);

/// Every setting of `cfg` as strings; resolve_config(to_config_map(c), "") == c.
ConfigMap to_config_map(const RunConfig& cfg);

/// "a,b,c", "lo:hi:log[:count]" or "lo:hi:lin[:count]".
std::vector<double> parse_grid(const std::string& text);
std::optional<RedundancySpec> parse_redundancy(const std::string& text);

}  // namespace chargenet
