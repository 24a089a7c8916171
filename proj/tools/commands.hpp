#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace chargenet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitOracle = 4;

/// Command-line values that take precedence over the config file.
struct Overrides {
    std::optional<std::string> mode;
    std::optional<std::string> onboard_ac_kw;
    std::optional<std::string> reserve_soc;
    std::optional<std::string> seed;
    std::optional<std::string> threads;
    std::optional<std::string> replicates;
    std::optional<std::string> n_ev_grid;
    std::optional<std::string> pf_grid;
    std::optional<std::string> redundancy;
    std::optional<std::string> threshold_kph;
    std::optional<std::string> target_p;
    std::optional<std::filesystem::path> output_dir;
    /// Raw `key=value` assignments, applied last.
    std::vector<std::string> assignments;
};

struct Invocation {
    std::string command;
    std::optional<std::filesystem::path> config;
    std::optional<std::filesystem::path> manifest;
    Overrides overrides;
    bool dump_routes = false;
    bool quiet = false;
};

int cmd_simulate(const Invocation& inv);
int cmd_faults(const Invocation& inv);
int cmd_capacity(const Invocation& inv);

struct ValidateOptions {
    bool dist = false;
    bool ev_math = false;
    bool cost = false;
    std::uint64_t seed = 1;
};

int cmd_validate(ValidateOptions opts);

int cmd_gen_fixtures(const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace chargenet::cli
