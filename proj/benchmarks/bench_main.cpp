#include <benchmark/benchmark.h>

#include <random>
#include <variant>
#include <vector>

#include "chargenet/experiment.hpp"
#include "chargenet/fault_sim.hpp"
#include "chargenet/fixtures.hpp"
#include "chargenet/reservation_ledger.hpp"
#include "chargenet/router.hpp"
#include "chargenet/trip_model.hpp"

using namespace chargenet;

namespace {

struct Compact {
    fixtures::SyntheticGridSpec spec = fixtures::compact_grid_spec();
    PopulationGrid grid = fixtures::make_synthetic_grid(spec);
    ChargeNetwork net = fixtures::make_synthetic_network(spec, grid, {});
    TripLengthDistribution lengths;
};

const Compact& compact() {
    static const Compact c;
    return c;
}

void BM_TripLengthSample(benchmark::State& state) {
    const TripLengthDistribution d;
    RandomStream rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(d.sample_km(rng));
}
BENCHMARK(BM_TripLengthSample);

void BM_TripSource(benchmark::State& state) {
    const auto& c = compact();
    const PopulationTripSource source(c.grid, c.lengths, 3);
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(source.trip(0, i++));
}
BENCHMARK(BM_TripSource);

void earliest_slot_bench(benchmark::State& state, double duration_h) {
    const auto n = static_cast<std::size_t>(state.range(0));
    ReservationLedger ledger(1);
    for (std::size_t k = 0; k < n; ++k) ledger.commit({0, k, double(k), double(k) + 0.6});
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> t(0.0, double(n));
    for (auto _ : state) benchmark::DoNotOptimize(ledger.earliest_slot(0, t(gen), duration_h));
}

// Gaps of 0.4 h: a 0.3 h request fits the next gap, a 0.5 h request fits none.
void BM_EarliestSlot(benchmark::State& state) { earliest_slot_bench(state, 0.3); }
BENCHMARK(BM_EarliestSlot)->Range(8, 8 << 10);

void BM_EarliestSlotSaturated(benchmark::State& state) { earliest_slot_bench(state, 0.5); }
BENCHMARK(BM_EarliestSlotSaturated)->Range(8, 8 << 10);

void BM_LedgerCommitRelease(benchmark::State& state) {
    ReservationLedger ledger(64);
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<std::size_t> cp(0, 63);
    std::uniform_real_distribution<double> t(0.0, 168.0);
    std::size_t ev = 0;
    for (auto _ : state) {
        const std::size_t p = cp(gen);
        const double s = ledger.earliest_slot(p, t(gen), 0.3);
        ledger.commit({p, ev, s, s + 0.3});
        if (ev >= 512) ledger.release(ev - 512);
        ++ev;
    }
}
BENCHMARK(BM_LedgerCommitRelease);

void BM_RoutePlan(benchmark::State& state) {
    const auto& c = compact();
    const PopulationTripSource source(c.grid, c.lengths, 4);
    std::vector<TripRequest> trips;
    for (std::size_t i = 0; trips.size() < 256; ++i) {
        auto t = source.trip(0, i);
        if (t.trip_km > 75.0) trips.push_back(t);
    }
    const Router router(c.net, RouterConfig{});
    const ReservationLedger ledger(c.net.size());
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(router.plan(trips[i++ % trips.size()], ledger));
}
BENCHMARK(BM_RoutePlan);

void BM_Replicate(benchmark::State& state) {
    const auto& c = compact();
    const PopulationTripSource source(c.grid, c.lengths, 5);
    ScenarioConfig cfg;
    cfg.n_ev = static_cast<std::size_t>(state.range(0));
    std::uint64_t rep = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_replicate(cfg, c.net, source, rep++).metrics.trips);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Replicate)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_FaultSweep(benchmark::State& state) {
    const auto star = fixtures::make_star();
    const fixtures::StarTripSource source(star, 6);
    ScenarioConfig cfg;
    cfg.n_ev = 2000;
    const auto routes = commit_fault_free(cfg, star.network, source);
    const Router router(star.network, cfg.router);
    const std::vector<double> grid{0.05};
    FaultSweepOptions opt;
    opt.replicates = 20;
    for (auto _ : state) benchmark::DoNotOptimize(run_fault_sweep(routes, router, grid, opt));
    state.SetItemsProcessed(state.iterations() * std::int64_t(routes.charging_plans.size() * opt.replicates));
}
BENCHMARK(BM_FaultSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
