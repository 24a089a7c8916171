#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "chargenet/errors.hpp"
#include "chargenet/geo.hpp"

using namespace chargenet;

TEST_CASE("distance of a point to itself is zero") {
    const GeoPoint p{53.0, -8.0};
    CHECK(distance_km(p, p) == 0.0);
}

TEST_CASE("one degree of latitude") {
    CHECK(distance_km({53.0, -8.0}, {54.0, -8.0}) == doctest::Approx(111.19508).epsilon(1e-7));
    CHECK(distance_km({53.0, -8.0}, {54.0, -8.0}) == doctest::Approx(kKmPerDegree).epsilon(1e-12));
}

TEST_CASE("antipodal points on the equator are half a circumference apart") {
    CHECK(distance_km({0.0, 0.0}, {0.0, 180.0}) == doctest::Approx(20015.114442).epsilon(1e-9));
}

TEST_CASE("make_point wraps longitude and rejects bad latitude") {
    CHECK(make_point(10.0, 180.0).lon == -180.0);
    CHECK(make_point(10.0, 190.0).lon == doctest::Approx(-170.0));
    CHECK(make_point(10.0, -181.0).lon == doctest::Approx(179.0));
    CHECK_THROWS_AS(make_point(91.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_point(NAN, 0.0), DomainError);
}

TEST_CASE("offset_km moves by the requested distance") {
    const GeoPoint o{53.0, -8.0};
    CHECK(distance_km(o, offset_km(o, 10.0, 0.0)) == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(distance_km(o, offset_km(o, 0.0, 50.0)) == doctest::Approx(50.0).epsilon(1e-4));
}

TEST_CASE("symmetry and triangle inequality on random points") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> lat(-80.0, 80.0);
    std::uniform_real_distribution<double> lon(-180.0, 180.0);
    for (int i = 0; i < 10000; ++i) {
        const GeoPoint a{lat(gen), lon(gen)};
        const GeoPoint b{lat(gen), lon(gen)};
        const GeoPoint c{lat(gen), lon(gen)};
        CHECK(distance_km(a, b) == distance_km(b, a));
        CHECK(distance_km(a, c) <= distance_km(a, b) + distance_km(b, c) + 1e-9);
        CHECK(distance_km(a, b) >= 0.0);
    }
}

TEST_CASE("grid index annulus query matches a brute-force filter") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> lat(51.0, 55.5);
    std::uniform_real_distribution<double> lon(-10.5, -5.5);
    std::vector<GeoPoint> pts(2000);
    for (auto& p : pts) p = {lat(gen), lon(gen)};
    const GeoGridIndex index(pts, 0.1);
    std::uniform_real_distribution<double> radius(0.0, 120.0);
    for (int q = 0; q < 300; ++q) {
        const GeoPoint c{lat(gen), lon(gen)};
        const double inner = radius(gen) * 0.5;
        const double outer = inner + radius(gen);
        std::vector<std::size_t> got;
        index.for_each_in_annulus(c, inner, outer, [&](std::size_t i, double) { got.push_back(i); });
        std::sort(got.begin(), got.end());
        std::vector<std::size_t> want;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double d = distance_km(c, pts[i]);
            if (d >= inner && d <= outer) want.push_back(i);
        }
        CHECK(got == want);
    }
}

TEST_CASE("grid index handles the antimeridian") {
    const std::vector<GeoPoint> pts{{0.0, 179.95}, {0.0, -179.95}, {0.0, 170.0}};
    const GeoGridIndex index(pts, 0.05);
    std::vector<std::size_t> got;
    index.for_each_in_annulus({0.0, 179.99}, 0.0, 20.0, [&](std::size_t i, double) { got.push_back(i); });
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::size_t>{0, 1});
}
