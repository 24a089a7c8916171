#include "chargenet/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "chargenet/csv.hpp"
#include "chargenet/errors.hpp"

namespace chargenet {

namespace {

constexpr std::size_t kDefaultGridPoints = 8;

double to_double(const std::string& key, const std::string& value) {
    try {
        return csv::parse_double(value, 0, key);
    } catch (const ParseError&) {
        throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, value));
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto v = csv::trim(value);
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key, value));
    }
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + csv::format_double(xs[i]);
    return out;
}

std::filesystem::path resolve_path(const std::string& value, const std::filesystem::path& base) {
    std::filesystem::path p(value);
    return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    // Boost's INI reader only knows ';' comments.
    std::istringstream in(text);
    std::ostringstream cleaned;
    std::string line;
    while (std::getline(in, line)) {
        const auto t = csv::trim(line);
        if (!t.empty() && t.front() == '#') continue;
        cleaned << line << '\n';
    }
    boost::property_tree::ptree tree;
    std::istringstream ini(cleaned.str());
    try {
        boost::property_tree::read_ini(ini, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
    }
    ConfigMap map;
    for (const auto& [key, node] : tree) {
        if (!node.empty()) throw ConfigError(fmt::format("config sections are not supported ('[{}]')", key));
        map[key] = std::string(csv::trim(node.data()));
    }
    return map;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataSourceError(fmt::format("cannot open config '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<double> parse_grid(const std::string& text) {
    const auto parts = csv::split(text, ':');
    std::vector<double> grid;
    if (parts.size() == 1) {
        for (const auto& item : csv::split(text, ',')) grid.push_back(to_double("grid", item));
    } else {
        if (parts.size() < 3 || parts.size() > 4) throw ConfigError(fmt::format("bad grid spec '{}'", text));
        const double lo = to_double("grid", parts[0]);
        const double hi = to_double("grid", parts[1]);
        const std::size_t count = parts.size() == 4 ? to_u64("grid", parts[3]) : kDefaultGridPoints;
        if (count < 2 || !(hi > lo)) throw ConfigError(fmt::format("bad grid spec '{}'", text));
        const bool log_scale = parts[2] == "log";
        if (!log_scale && parts[2] != "lin") throw ConfigError(fmt::format("grid scale must be log or lin: '{}'", text));
        if (log_scale && !(lo > 0.0)) throw ConfigError("log grid needs a positive lower bound");
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(count - 1);
            grid.push_back(log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
        }
        grid.front() = lo;
        grid.back() = hi;
    }
    if (grid.empty()) throw ConfigError("empty grid");
    return grid;
}

std::optional<RedundancySpec> parse_redundancy(const std::string& text) {
    const auto t = std::string(csv::trim(text));
    if (t.empty() || t == "none") return std::nullopt;
    if (t == "isolated") return RedundancySpec{};
    if (t.rfind("isolated:", 0) == 0) return RedundancySpec{to_double("add_redundancy", t.substr(9))};
    throw ConfigError(fmt::format("add_redundancy: expected 'none', 'isolated' or 'isolated:<km>', got '{}'", text));
}

RunConfig resolve_config(const ConfigMap& map, const std::filesystem::path& base_dir) {
    RunConfig cfg;
    auto& sc = cfg.scenario;
    auto& ev = sc.router.ev;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const auto num = [](double& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); };
    };
    const std::map<std::string, Setter> setters{
        {"seed", [&](auto& k, auto& v) { sc.seed = to_u64(k, v); }},
        {"replicates", [&](auto& k, auto& v) { sc.replicates = to_u64(k, v); }},
        {"threads", [&](auto& k, auto& v) { sc.threads = static_cast<unsigned>(to_u64(k, v)); }},
        {"n_ev", [&](auto& k, auto& v) { cfg.n_ev_grid = {static_cast<std::size_t>(to_u64(k, v))}; }},
        {"n_ev_grid",
         [&](auto& k, auto& v) {
             cfg.n_ev_grid.clear();
             for (const auto& item : csv::split(v, ',')) cfg.n_ev_grid.push_back(to_u64(k, item));
         }},
        {"mode", [&](auto&, auto& v) {
             try {
                 sc.router.mode = parse_reservation_mode(v);
             } catch (const ValidationError& e) {
                 throw ConfigError(e.what());
             }
         }},
        {"max_stops", [&](auto& k, auto& v) { sc.router.max_stops = to_u64(k, v); }},
        {"population", [&](auto&, auto& v) { cfg.population = resolve_path(v, base_dir); }},
        {"network", [&](auto&, auto& v) { cfg.network = resolve_path(v, base_dir); }},
        {"output_dir", [&](auto&, auto& v) { cfg.output_dir = resolve_path(v, base_dir); }},
        {"battery_kwh", num(ev.battery_kwh)},
        {"speed_kph", num(ev.speed_kph)},
        {"max_range_km", num(ev.max_range_km)},
        {"dc_charge_kw", num(ev.dc_charge_kw)},
        {"onboard_ac_kw", num(ev.onboard_ac_kw)},
        {"reserve_soc", num(ev.reserve_soc)},
        {"charge_target_soc", num(ev.charge_target_soc)},
        {"route_scale", num(ev.route_scale)},
        {"speed_thresholds_kph",
         [&](auto& k, auto& v) {
             sc.speed_thresholds_kph.clear();
             for (const auto& item : csv::split(v, ',')) sc.speed_thresholds_kph.push_back(to_double(k, item));
         }},
        {"trip_coefficient", num(cfg.trip.coefficient)},
        {"trip_rate", num(cfg.trip.rate)},
        {"trip_power", num(cfg.trip.power)},
        {"trip_max_km", num(cfg.trip.max_km)},
        {"fault_pf_grid", [&](auto&, auto& v) { cfg.fault_pf_grid = parse_grid(v); }},
        {"fault_replicates", [&](auto& k, auto& v) { cfg.fault_replicates = to_u64(k, v); }},
        {"fault_seed", [&](auto& k, auto& v) { cfg.fault_seed = to_u64(k, v); }},
        {"add_redundancy", [&](auto&, auto& v) { cfg.redundancy = parse_redundancy(v); }},
        {"capacity_threshold_kph", num(cfg.capacity.threshold_kph)},
        {"capacity_target", num(cfg.capacity.target_p)},
        {"capacity_ceiling", [&](auto& k, auto& v) { cfg.capacity.ceiling = to_u64(k, v); }},
        {"capacity_min_trips", [&](auto& k, auto& v) { cfg.capacity.min_trips = to_u64(k, v); }},
        {"capacity_growth", num(cfg.capacity.growth)},
        {"cost_dc_install", num(cfg.cost.dc_install_eur)},
        {"cost_ac_install", num(cfg.cost.ac_install_eur)},
        {"cost_dc_annual", num(cfg.cost.dc_annual_eur)},
        {"cost_ac_annual", num(cfg.cost.ac_annual_eur)},
        {"cost_lifespan_years", num(cfg.cost.lifespan_years)},
        {"cost_users", num(cfg.cost_users)},
    };
    for (const auto& [key, value] : map) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
        it->second(key, value);
    }

    if (cfg.n_ev_grid.empty()) throw ConfigError("n_ev_grid is empty");
    for (const auto n : cfg.n_ev_grid) {
        if (n < 1) throw ConfigError("n_ev values must be at least 1");
    }
    sc.n_ev = cfg.n_ev_grid.front();
    sc.validate();
    for (const double p : cfg.fault_pf_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("fault_pf_grid values must lie in [0, 1]");
    }
    if (cfg.fault_replicates < 1) throw ConfigError("fault_replicates must be at least 1");
    if (!(cfg.capacity.target_p > 0.0 && cfg.capacity.target_p <= 1.0)) {
        throw ConfigError("capacity_target must be in (0, 1]");
    }
    if (!(cfg.cost_users > 0.0)) throw ConfigError("cost_users must be positive");
    cfg.cost.validate();
    try {
        TripLengthDistribution probe_params_only{cfg.trip};
        (void)probe_params_only;
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ConfigMap to_config_map(const RunConfig& cfg) {
    const auto& sc = cfg.scenario;
    const auto& ev = sc.router.ev;
    const auto d = [](double x) { return csv::format_double(x); };
    std::string grid;
    for (std::size_t i = 0; i < cfg.n_ev_grid.size(); ++i) grid += (i ? "," : "") + std::to_string(cfg.n_ev_grid[i]);
    ConfigMap m{
        {"seed", std::to_string(sc.seed)},
        {"replicates", std::to_string(sc.replicates)},
        {"threads", std::to_string(sc.threads)},
        {"n_ev_grid", grid},
        {"mode", to_string(sc.router.mode)},
        {"max_stops", std::to_string(sc.router.max_stops)},
        {"population", cfg.population.string()},
        {"network", cfg.network.string()},
        {"output_dir", cfg.output_dir.string()},
        {"battery_kwh", d(ev.battery_kwh)},
        {"speed_kph", d(ev.speed_kph)},
        {"max_range_km", d(ev.max_range_km)},
        {"dc_charge_kw", d(ev.dc_charge_kw)},
        {"onboard_ac_kw", d(ev.onboard_ac_kw)},
        {"reserve_soc", d(ev.reserve_soc)},
        {"charge_target_soc", d(ev.charge_target_soc)},
        {"route_scale", d(ev.route_scale)},
        {"speed_thresholds_kph", join(sc.speed_thresholds_kph)},
        {"trip_coefficient", d(cfg.trip.coefficient)},
        {"trip_rate", d(cfg.trip.rate)},
        {"trip_power", d(cfg.trip.power)},
        {"trip_max_km", d(cfg.trip.max_km)},
        {"fault_pf_grid", join(cfg.fault_pf_grid)},
        {"fault_replicates", std::to_string(cfg.fault_replicates)},
        {"fault_seed", std::to_string(cfg.fault_seed)},
        {"add_redundancy", !cfg.redundancy ? "none"
                           : cfg.redundancy->radius_km ? "isolated:" + d(*cfg.redundancy->radius_km)
                                                       : "isolated"},
        {"capacity_threshold_kph", d(cfg.capacity.threshold_kph)},
        {"capacity_target", d(cfg.capacity.target_p)},
        {"capacity_ceiling", std::to_string(cfg.capacity.ceiling)},
        {"capacity_min_trips", std::to_string(cfg.capacity.min_trips)},
        {"capacity_growth", d(cfg.capacity.growth)},
        {"cost_dc_install", d(cfg.cost.dc_install_eur)},
        {"cost_ac_install", d(cfg.cost.ac_install_eur)},
        {"cost_dc_annual", d(cfg.cost.dc_annual_eur)},
        {"cost_ac_annual", d(cfg.cost.ac_annual_eur)},
        {"cost_lifespan_years", d(cfg.cost.lifespan_years)},
        {"cost_users", d(cfg.cost_users)},
    };
    return m;
}

}  // namespace chargenet
