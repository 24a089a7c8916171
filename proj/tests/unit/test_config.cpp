#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "chargenet/config.hpp"
#include "chargenet/errors.hpp"

using namespace chargenet;

TEST_CASE("flat key-value text with comments") {
    const auto map = parse_config_text(
        "# scenario\n"
        "; also a comment\n"
        "seed = 42\n"
        "n_ev_grid = 100, 500,2000\n"
        "mode = reservation-blind\n"
        "\n"
        "population = data/pop.csv\n");
    CHECK(map.at("seed") == "42");
    CHECK(map.at("n_ev_grid") == "100, 500,2000");
    const auto cfg = resolve_config(map, "/base");
    CHECK(cfg.scenario.seed == 42);
    CHECK(cfg.n_ev_grid == std::vector<std::size_t>{100, 500, 2000});
    CHECK(cfg.scenario.router.mode == ReservationMode::Blind);
    CHECK(cfg.population == std::filesystem::path("/base/data/pop.csv"));
}

TEST_CASE("defaults follow the vehicle table") {
    const auto cfg = resolve_config({}, "");
    const auto& ev = cfg.scenario.router.ev;
    CHECK(ev.battery_kwh == 24.0);
    CHECK(ev.max_range_km == 110.0);
    CHECK(ev.reserve_soc == 0.2);
    CHECK(ev.route_scale == 0.85);
    CHECK(cfg.scenario.speed_thresholds_kph == std::vector<double>{60.0, 40.0, 10.0});
    CHECK(cfg.cost.dc_install_eur == 48000.0);
    CHECK_FALSE(cfg.redundancy);
}

TEST_CASE("bad input is a config error") {
    CHECK_THROWS_AS(resolve_config({{"sede", "1"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"seed", "-3"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"reserve_soc", "abc"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"reserve_soc", "0.9"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"mode", "fast"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"n_ev", "0"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"capacity_target", "0"}}, ""), ConfigError);
    CHECK_THROWS_AS(resolve_config({{"fault_pf_grid", "0.1,1.5"}}, ""), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[section]\nseed=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("seed\n"), ConfigError);
}

TEST_CASE("probability grids") {
    CHECK(parse_grid("0.01,0.02,0.05") == std::vector<double>{0.01, 0.02, 0.05});
    const auto log_grid = parse_grid("0.01:0.30:log");
    REQUIRE(log_grid.size() == 8);
    CHECK(log_grid.front() == doctest::Approx(0.01));
    CHECK(log_grid.back() == 0.30);
    for (std::size_t i = 1; i < log_grid.size(); ++i) {
        CHECK(log_grid[i] / log_grid[i - 1] == doctest::Approx(std::pow(30.0, 1.0 / 7.0)));
    }
    CHECK(parse_grid("0:1:lin:5") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK_THROWS_AS(parse_grid("0:1:log"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0.1:0.05:lin"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0.1:0.5:cubic"), ConfigError);
}

TEST_CASE("redundancy requests") {
    CHECK_FALSE(parse_redundancy("none"));
    CHECK_FALSE(parse_redundancy("isolated")->radius_km);
    CHECK(*parse_redundancy("isolated:18.7")->radius_km == 18.7);
    CHECK_THROWS_AS(parse_redundancy("all"), ConfigError);
}

TEST_CASE("config echo round trip") {
    ConfigMap map{{"seed", "9"},        {"n_ev_grid", "10,20"},        {"onboard_ac_kw", "6.6"},
                  {"mode", "blind"},    {"fault_pf_grid", "0.01:0.3:log:4"}, {"add_redundancy", "isolated:18.7"},
                  {"network", "n.csv"}, {"speed_thresholds_kph", "50,30"}};
    const auto cfg = resolve_config(map, "/data");
    const auto echoed = to_config_map(cfg);
    const auto again = resolve_config(echoed, "");
    CHECK(to_config_map(again) == echoed);
    CHECK(again.network == std::filesystem::path("/data/n.csv"));
    CHECK(again.scenario.router.ev.onboard_ac_kw == 6.6);
    CHECK(again.fault_pf_grid == cfg.fault_pf_grid);
}

TEST_CASE("reading a missing file is a data-source error") {
    CHECK_THROWS_AS(read_config_file("/nonexistent/scenario.ini"), DataSourceError);
    const auto path = std::filesystem::temp_directory_path() / "chargenet_config_test.ini";
    {
        std::ofstream out(path);
        out << "seed = 5\nreplicates = 3\n";
    }
    const auto map = read_config_file(path);
    CHECK(resolve_config(map, path.parent_path()).scenario.replicates == 3);
    std::filesystem::remove(path);
}
