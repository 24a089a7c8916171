#include <doctest.h>

#include <random>
#include <sstream>

#include "chargenet/charge_network.hpp"
#include "chargenet/errors.hpp"
#include "chargenet/fixtures.hpp"
#include "unit/fixture_path.hpp"

using namespace chargenet;

namespace {

ChargeNetwork line_network(std::vector<double> km) {
    std::vector<ChargePoint> pts;
    for (std::size_t i = 0; i < km.size(); ++i) {
        pts.push_back({"P" + std::to_string(i), fixtures::equator_point(km[i]), ChargerKind::DC, 50.0, true});
    }
    return ChargeNetwork(std::move(pts));
}

std::vector<std::string> ids(const ChargeNetwork& net, const std::vector<PointDistance>& found) {
    std::vector<std::string> out;
    for (const auto& pd : found) out.push_back(net.at(pd.index).id);
    return out;
}

}  // namespace

TEST_CASE("five-point fixture") {
    const auto net = load_network_file(fixture_path("network_5.csv"));
    CHECK(net.size() == 5);
    CHECK(net.count(ChargerKind::DC) == 3);
    CHECK(net.count(ChargerKind::AC) == 2);
    REQUIRE(net.find("GAL-01"));
    CHECK(net.at(*net.find("GAL-01")).power_kw == 22.0);
    // Points are held in id order.
    for (std::size_t i = 1; i < net.size(); ++i) CHECK(net.at(i - 1).id < net.at(i).id);
}

TEST_CASE("loader errors") {
    std::istringstream dup("id,lat,lon,kind,power_kw\nA,53,-8,DC,50\nA,53.1,-8,AC,22\n");
    CHECK_THROWS_WITH_AS(load_network(dup), doctest::Contains("'A'"), ValidationError);
    std::istringstream kind("id,lat,lon,kind,power_kw\nA,53,-8,XX,50\n");
    CHECK_THROWS_AS(load_network(kind), ValidationError);
    std::istringstream power("id,lat,lon,kind,power_kw\nA,53,-8,DC,0\n");
    CHECK_THROWS_AS(load_network(power), ValidationError);
    std::istringstream empty("");
    CHECK(load_network(empty).empty());
    std::istringstream header_only("id,lat,lon,kind,power_kw\n");
    CHECK(load_network(header_only).empty());
}

TEST_CASE("operational column round trip") {
    std::istringstream in("id,lat,lon,kind,power_kw,operational\nA,53,-8,DC,50,1\nB,53.2,-8,AC,22,0\n");
    const auto net = load_network(in);
    CHECK(net.at(0).operational);
    CHECK_FALSE(net.at(1).operational);
    std::ostringstream out;
    write_network_csv(out, net);
    std::istringstream back(out.str());
    const auto again = load_network(back);
    CHECK_FALSE(again.at(1).operational);
    CHECK(again.at(1).location == net.at(1).location);
}

TEST_CASE("radius queries") {
    const auto net = line_network({10.0, 20.0, 30.0});
    const GeoPoint origin = fixtures::equator_point(0.0);
    CHECK(ids(net, net.within_radius(origin, 25.0)) == std::vector<std::string>{"P0", "P1"});
    CHECK(ids(net, net.within_radius(net.at(1).location, 0.0)) == std::vector<std::string>{"P1"});
    CHECK(net.within_radius(origin, 1e5).size() == 3);
    CHECK_THROWS_AS(net.within_radius(origin, -1.0), DomainError);
}

TEST_CASE("radius ties are ordered by id") {
    const auto net = line_network({-10.0, 10.0});
    const auto found = net.within_radius(fixtures::equator_point(0.0), 15.0);
    REQUIRE(found.size() == 2);
    CHECK(found[0].distance_km == found[1].distance_km);
    CHECK(net.at(found[0].index).id == "P0");
}

TEST_CASE("radius query matches brute force on a random network") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> lat(51.5, 55.3);
    std::uniform_real_distribution<double> lon(-10.3, -6.0);
    std::vector<ChargePoint> pts;
    for (int i = 0; i < 500; ++i) pts.push_back({"N" + std::to_string(i), {lat(gen), lon(gen)}, ChargerKind::AC, 22.0, true});
    const ChargeNetwork net(pts);
    std::uniform_real_distribution<double> radius(0.0, 150.0);
    for (int q = 0; q < 1000; ++q) {
        const GeoPoint c{lat(gen), lon(gen)};
        const double r = radius(gen);
        std::vector<std::size_t> want;
        for (std::size_t i = 0; i < net.size(); ++i) {
            if (distance_km(c, net.at(i).location) <= r) want.push_back(i);
        }
        std::vector<std::size_t> got;
        for (const auto& pd : net.within_radius(c, r)) got.push_back(pd.index);
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
    // Isolation agrees with the radius query definition.
    for (const double r : {5.0, 10.0, 18.7}) {
        std::vector<std::size_t> want;
        for (std::size_t i = 0; i < net.size(); ++i) {
            if (net.within_radius(net.at(i).location, r).size() == 1) want.push_back(i);
        }
        CHECK(net.isolated_points(r) == want);
    }
}

TEST_CASE("isolated points") {
    CHECK(line_network({0.0}).isolated_points(1000.0) == std::vector<std::size_t>{0});
    CHECK(line_network({0.0, 30.0}).isolated_points(18.0) == std::vector<std::size_t>{0, 1});
    CHECK(line_network({0.0, 1.0, 2.0}).isolated_points(2.5).empty());
}

TEST_CASE("isolation radius follows the reserve") {
    CHECK(isolation_radius_km(EvParams{}) == doctest::Approx(18.7));
    EvParams p;
    p.reserve_soc = 0.28;
    CHECK(isolation_radius_km(p) == doctest::Approx(0.28 * 110 * 0.85));
}

TEST_CASE("co-located redundancy") {
    const auto net = line_network({0.0, 30.0, 60.0});
    const std::vector<std::string> targets{"P1"};
    const auto aug = net.with_colocated_redundancy(targets);
    CHECK(aug.size() == 4);
    const auto copy = aug.find("P1+r1");
    REQUIRE(copy);
    CHECK(aug.at(*copy).location == net.at(1).location);
    CHECK(aug.at(*copy).kind == net.at(1).kind);
    CHECK(net.with_colocated_redundancy({}).size() == 3);
    const std::vector<std::string> twice{"P1", "P1"};
    const auto aug2 = net.with_colocated_redundancy(twice);
    CHECK(aug2.size() == 5);
    CHECK(aug2.find("P1+r2"));
    const std::vector<std::string> unknown{"nope"};
    CHECK_THROWS_AS(net.with_colocated_redundancy(unknown), ValidationError);
}

TEST_CASE("synthetic network generator") {
    const auto spec = fixtures::compact_grid_spec();
    const auto grid = fixtures::make_synthetic_grid(spec);
    const auto net = fixtures::make_synthetic_network(spec, grid, {});
    CHECK(net.size() == 50);
    CHECK(net.count(ChargerKind::DC) == 5);
    const auto again = fixtures::make_synthetic_network(spec, grid, {});
    for (std::size_t i = 0; i < net.size(); ++i) CHECK(net.at(i).location == again.at(i).location);
}
