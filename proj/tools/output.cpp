#include "output.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "chargenet/errors.hpp"

namespace chargenet::cli {

namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataSourceError(fmt::format("cannot write {}", tmp.string()));
        out << contents;
        out.flush();
        if (!out) throw DataSourceError(fmt::format("write failed for {}", tmp.string()));
    }
    fs::rename(tmp, path);
}

nlohmann::json to_json(const RunManifest& m) {
    return {
        {"tool", "chargenet"},
        {"version", m.version},
        {"command", m.command},
        {"config_path", m.config_path},
        {"seed", m.seed},
        {"config", m.config},
        {"outputs", m.outputs},
        {"wall_clock_s", m.wall_clock_s},
        {"started_utc", m.started_utc},
    };
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.config_path = j.value("config_path", "");
        m.config = j.at("config").get<ConfigMap>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.version = j.value("version", "");
        m.outputs = j.value("outputs", std::vector<std::string>{});
        m.wall_clock_s = j.value("wall_clock_s", 0.0);
        m.started_utc = j.value("started_utc", "");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("malformed manifest: {}", e.what()));
    }
}

RunManifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataSourceError(fmt::format("cannot read manifest {}", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return manifest_from_json(j);
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace chargenet::cli
