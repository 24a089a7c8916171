#include <doctest.h>

#include "chargenet/errors.hpp"
#include "chargenet/ev_model.hpp"

using namespace chargenet;

TEST_CASE("energy per km") {
    CHECK(energy_per_km(EvParams{}) == doctest::Approx(24.0 / 110.0));
    EvParams p;
    p.battery_kwh = 10.0;
    p.max_range_km = 100.0;
    CHECK(energy_per_km(p) == doctest::Approx(0.1));
    p.max_range_km = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("leg limits") {
    const EvParams p;
    CHECK(max_leg_km(p, 1.0, 0.2) == doctest::Approx(74.8).epsilon(1e-12));
    CHECK(max_leg_km(p, 0.8, 0.2) == doctest::Approx(56.1).epsilon(1e-12));
    CHECK(max_leg_km(p, 0.8, 0.28) == doctest::Approx(48.62).epsilon(1e-12));
    EvParams unscaled;
    unscaled.route_scale = 1.0;
    CHECK(max_leg_km(unscaled, 1.0, 0.2) == doctest::Approx(88.0).epsilon(1e-14));
    CHECK_THROWS_AS(max_leg_km(p, 0.2, 0.2), DomainError);
    CHECK_THROWS_AS(max_leg_km(p, 0.2, 0.8), DomainError);
}

TEST_CASE("charge durations") {
    const EvParams p;
    CHECK(charge_duration_h(p, 0.2, 0.8, 45.0) * 60.0 == doctest::Approx(19.2).epsilon(1e-12));
    CHECK(charge_duration_h(p, 0.2, 0.8, ChargerKind::DC, 50.0) == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(charge_duration_h(p, 0.2, 0.8, ChargerKind::AC, 22.0) == doctest::Approx(14.4 / 22.0).epsilon(1e-12));
    CHECK(charge_duration_h(p, 0.5, 0.5, 45.0) == 0.0);
    CHECK_THROWS_AS(charge_duration_h(p, 0.2, 0.8, 0.0), DomainError);
    CHECK_THROWS_AS(charge_duration_h(p, 0.8, 0.2, 45.0), DomainError);
}

TEST_CASE("effective power takes the lower of post and vehicle") {
    EvParams p;
    CHECK(effective_power_kw(p, ChargerKind::DC, 50.0) == 45.0);
    CHECK(effective_power_kw(p, ChargerKind::DC, 20.0) == 20.0);
    CHECK(effective_power_kw(p, ChargerKind::AC, 43.0) == 22.0);
    p.onboard_ac_kw = 6.6;
    CHECK(effective_power_kw(p, ChargerKind::AC, 22.0) == 6.6);
}

TEST_CASE("effective speeds") {
    const EvParams p;
    CHECK(effective_speed_kph(p, 45.0) == doctest::Approx(62.7).epsilon(0.05 / 62.7));
    CHECK(effective_speed_kph(p, 22.0) == doctest::Approx(47.6).epsilon(0.05 / 47.6));
    CHECK(effective_speed_kph(p, 6.6) == doctest::Approx(22.6).epsilon(0.05 / 22.6));
    CHECK(charge_duration_h(p, 0.2, 0.8, 6.6) * 60.0 == doctest::Approx(130.9).epsilon(0.05 / 130.9));
}

TEST_CASE("effective speed rises with power and stays below the cruise speed") {
    const EvParams p;
    double prev = 0.0;
    for (double kw = 1.0; kw <= 1000.0; kw *= 1.3) {
        const double v = effective_speed_kph(p, kw);
        CHECK(v > prev);
        CHECK(v < p.speed_kph);
        prev = v;
    }
}

TEST_CASE("parameter validation") {
    EvParams p;
    CHECK_NOTHROW(p.validate());
    p.reserve_soc = 0.8;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = {};
    p.charge_target_soc = 1.1;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = {};
    p.speed_kph = -1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}
