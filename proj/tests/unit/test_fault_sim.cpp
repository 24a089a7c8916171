#include <doctest.h>

#include <cmath>

#include "chargenet/errors.hpp"
#include "chargenet/experiment.hpp"
#include "chargenet/fault_sim.hpp"
#include "chargenet/fixtures.hpp"

using namespace chargenet;

namespace {

TripRequest trip_between(const GeoPoint& a, const GeoPoint& b, std::size_t ev = 0) {
    TripRequest t;
    t.ev_id = ev;
    t.origin = a;
    t.destination = b;
    t.trip_km = distance_km(a, b);
    return t;
}

std::vector<ChargePoint> lattice(std::size_t n) {
    std::vector<ChargePoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({"L" + std::to_string(i), {52.0 + 0.01 * double(i / 30), -8.0 + 0.01 * double(i % 30)},
                       ChargerKind::AC, 22.0, true});
    }
    return pts;
}

}  // namespace

TEST_CASE("fault masks") {
    const ChargeNetwork net(lattice(708));
    RandomStream rng(1);
    CHECK(sample_fault_mask(net, 0.0, rng).empty());
    CHECK(sample_fault_mask(net, 1.0, rng).size() == 708);
    const double sigma = std::sqrt(708 * 0.25);
    for (int i = 0; i < 200; ++i) {
        const auto n = double(sample_fault_mask(net, 0.5, rng).size());
        CHECK(std::abs(n - 354.0) < 4.0 * sigma);
    }
    CHECK_THROWS_AS(sample_fault_mask(net, 1.5, rng), DomainError);
    CHECK_THROWS_AS((FaultConfig{-0.1, 1}.validate()), DomainError);
}

TEST_CASE("fault field is nested across probabilities") {
    const FaultField field(3);
    for (std::size_t cp = 0; cp < 1000; ++cp) {
        if (field.faulty(0, 7, cp, 0.05)) CHECK(field.faulty(0, 7, cp, 0.2));
        CHECK_FALSE(field.faulty(0, 7, cp, 0.0));
        CHECK(field.faulty(0, 7, cp, 1.0));
    }
}

TEST_CASE("replay: untouched plan completes") {
    const auto corridor = fixtures::make_corridor({50.0, 100.0}, 150.0);
    const Router router(corridor.network, RouterConfig{});
    ReservationLedger ledger(2);
    const auto plan = router.commit(
        std::get<RoutePlan>(router.plan(trip_between(corridor.origin, corridor.destination), ledger)), ledger);
    const auto outcome = replay_trip(plan, [](std::size_t) { return false; }, router, ledger);
    CHECK(outcome.status == ReplayStatus::CompletedAsPlanned);
    CHECK_FALSE(outcome.first_faulty_cp);
    CHECK(outcome.extra_time_h == 0.0);
}

TEST_CASE("replay: co-located duplicate absorbs the fault") {
    const auto corridor = fixtures::make_corridor({60.0}, 110.0);
    const std::vector<std::string> ids{"K001"};
    const auto net = corridor.network.with_colocated_redundancy(ids);
    const Router router(net, RouterConfig{});
    ReservationLedger ledger(net.size());
    const auto plan = router.commit(
        std::get<RoutePlan>(router.plan(trip_between(corridor.origin, corridor.destination, 4), ledger)), ledger);
    REQUIRE(plan.stops.size() == 1);
    const std::size_t primary = plan.stops[0].cp;
    CHECK(net.at(primary).id == "K001");
    const auto faulty = [primary](std::size_t cp) { return cp == primary; };
    const auto outcome = replay_trip(plan, faulty, router, ledger);
    CHECK(outcome.status == ReplayStatus::Rerouted);
    CHECK(*outcome.first_faulty_cp == primary);
    CHECK(outcome.extra_time_h == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(outcome.reroute);
    CHECK(net.at(outcome.reroute->stops.at(0).cp).id == "K001+r1");

    // Another vehicle holding the duplicate turns the detour into a wait.
    const std::size_t spare = *net.find("K001+r1");
    ledger.commit({spare, 9, plan.stops[0].arrival_h - 0.1, plan.stops[0].arrival_h + 0.25});
    const auto delayed = replay_trip(plan, faulty, router, ledger);
    CHECK(delayed.status == ReplayStatus::Rerouted);
    CHECK(delayed.extra_time_h == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("replay: isolated faulty stop strands the vehicle") {
    const auto corridor = fixtures::make_corridor({74.0, 99.0}, 124.0);
    const Router router(corridor.network, RouterConfig{});
    ReservationLedger ledger(2);
    const auto plan = router.commit(
        std::get<RoutePlan>(router.plan(trip_between(corridor.origin, corridor.destination), ledger)), ledger);
    REQUIRE(plan.stops.size() == 1);
    CHECK(plan.stops[0].cp == 0);
    CHECK(plan.stops[0].soc_in == doctest::Approx(1.0 - 74.0 / 93.5));
    const auto outcome = replay_trip(plan, [](std::size_t cp) { return cp == 0; }, router, ledger);
    CHECK(outcome.status == ReplayStatus::Stranded);
    // Faults away from the planned stop change nothing.
    CHECK(replay_trip(plan, [](std::size_t cp) { return cp == 1; }, router, ledger).status ==
          ReplayStatus::CompletedAsPlanned);
}

TEST_CASE("replay: destination within emergency range") {
    // Arrival at the stop with 0.4652 SoC leaves 43.5 km of emergency range.
    const auto corridor = fixtures::make_corridor({50.0}, 90.0);
    const Router router(corridor.network, RouterConfig{});
    ReservationLedger ledger(1);
    const auto plan = router.commit(
        std::get<RoutePlan>(router.plan(trip_between(corridor.origin, corridor.destination), ledger)), ledger);
    REQUIRE(plan.stops.size() == 1);
    const auto outcome = replay_trip(plan, [](std::size_t) { return true; }, router, ledger);
    CHECK(outcome.status == ReplayStatus::Rerouted);
    REQUIRE(outcome.reroute);
    CHECK(outcome.reroute->stops.empty());
    CHECK(outcome.reroute->soc_at_destination >= 0.0);
    CHECK(outcome.reroute->soc_at_destination < 0.2);
}

TEST_CASE("first-order estimate") {
    CHECK(estimate_ps_first_order(0.02, 0.1, 3, 708) == doctest::Approx(8.47e-6).epsilon(1e-3));
    CHECK(estimate_ps_first_order(0.02, 0.0, 3, 708) == 0.0);
    CHECK(estimate_ps_first_order(0.02, 0.1, 0, 708) == 0.0);
    CHECK_THROWS_AS(estimate_ps_first_order(0.02, 0.1, 0, 0), DomainError);
}

TEST_CASE("sweep on the star fixture") {
    const auto star = fixtures::make_star();
    const fixtures::StarTripSource source(star, 5);
    ScenarioConfig cfg;
    cfg.n_ev = 400;
    const auto routes = commit_fault_free(cfg, star.network, source);
    CHECK(routes.trips == 400);
    CHECK(routes.needed_charge == 200);
    CHECK(routes.unroutable == 0);
    CHECK(routes.charging_plans.size() == 200);
    std::size_t via_isolated = 0;
    for (const auto& p : routes.charging_plans) {
        REQUIRE(p.stops.size() == 1);
        via_isolated += p.stops[0].cp == star.isolated_index ? 1 : 0;
    }
    CHECK(via_isolated == 20);
    CHECK(star.network.isolated_points(isolation_radius_km(cfg.router.ev)) ==
          std::vector<std::size_t>{star.isolated_index});

    const Router router(star.network, cfg.router);
    const std::vector<double> grid{0.0, 0.05, 0.2, 1.0};
    FaultSweepOptions opt;
    opt.replicates = 200;
    opt.threads = 2;
    const auto rows = run_fault_sweep(routes, router, grid, opt);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].stranded == 0);
    CHECK(rows[0].p_s == 0.0);
    for (const auto& r : rows) {
        CHECK(r.p_s <= r.p_c);
        CHECK(r.p_c == doctest::Approx(0.5));
        CHECK(r.ci_low <= r.p_s);
        CHECK(r.p_s <= r.ci_high);
    }
    for (std::size_t g = 1; g < rows.size(); ++g) CHECK(rows[g].stranded >= rows[g - 1].stranded);
    // Every charging trip strands when every point fails.
    CHECK(rows[3].stranded == rows[3].replayed);
    const double expected = estimate_ps_first_order(0.5, 0.05, 1, 10);
    const double sigma = std::sqrt(expected * (1 - expected) / double(rows[1].trips));
    CHECK(std::abs(rows[1].p_s - expected) < 3.0 * sigma);

    // Thread count does not change the result.
    opt.threads = 1;
    const auto serial = run_fault_sweep(routes, router, grid, opt);
    for (std::size_t g = 0; g < grid.size(); ++g) CHECK(serial[g].stranded == rows[g].stranded);
}

TEST_CASE("faults only at points no plan uses change nothing") {
    const auto star = fixtures::make_star();
    const fixtures::StarTripSource source(star, 6);
    ScenarioConfig cfg;
    cfg.n_ev = 60;
    const auto routes = commit_fault_free(cfg, star.network, source);
    std::vector<bool> used(star.network.size(), false);
    for (const auto& p : routes.charging_plans) {
        for (const auto& s : p.stops) used[s.cp] = true;
    }
    const Router router(star.network, cfg.router);
    for (const auto& p : routes.charging_plans) {
        const auto outcome = replay_trip(p, [&](std::size_t cp) { return !used[cp]; }, router, routes.ledger);
        CHECK(outcome.status == ReplayStatus::CompletedAsPlanned);
    }
}
