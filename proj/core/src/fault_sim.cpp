#include "chargenet/fault_sim.hpp"

#include <algorithm>
#include <cmath>

#include "chargenet/errors.hpp"
#include "chargenet/parallel.hpp"
#include "chargenet/stats.hpp"

namespace chargenet {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

void FaultConfig::validate() const { check_probability(p_f, "p_f"); }

std::vector<std::size_t> sample_fault_mask(const ChargeNetwork& net, double p_f, RandomStream& rng) {
    check_probability(p_f, "p_f");
    std::vector<std::size_t> faulty;
    for (std::size_t i = 0; i < net.size(); ++i) {
        if (rng.uniform01() < p_f) faulty.push_back(i);
    }
    return faulty;
}

const char* to_string(ReplayStatus status) noexcept {
    switch (status) {
        case ReplayStatus::CompletedAsPlanned: return "completed";
        case ReplayStatus::Rerouted: return "rerouted";
        case ReplayStatus::Stranded: return "stranded";
    }
    return "?";
}

ReplayOutcome replay_trip(const RoutePlan& plan, const PointFilter& is_faulty, const Router& router,
                          const ReservationLedger& snapshot) {
    ReplayOutcome outcome;
    const auto hit = std::find_if(plan.stops.begin(), plan.stops.end(),
                                  [&](const RouteStop& s) { return is_faulty(s.cp); });
    if (hit == plan.stops.end()) return outcome;

    outcome.first_faulty_cp = hit->cp;
    RouteQuery q;
    q.ev_id = plan.ev_id;
    q.start = router.network().at(hit->cp).location;
    q.destination = plan.legs.back().to;
    q.depart_h = hit->arrival_h;
    q.start_soc = std::max(0.0, hit->soc_in);
    q.first_leg_floor = 0.0;
    q.ignore_ev = plan.ev_id;
    const PointFilter usable = [&](std::size_t cp) { return !is_faulty(cp); };
    auto result = router.plan(q, snapshot, usable);
    if (auto* p = std::get_if<RoutePlan>(&result)) {
        outcome.status = ReplayStatus::Rerouted;
        outcome.extra_time_h = std::max(0.0, p->arrival_h - plan.arrival_h);
        outcome.reroute = std::move(*p);
    } else {
        outcome.status = ReplayStatus::Stranded;
    }
    return outcome;
}

double estimate_ps_first_order(double p_c, double p_f, std::size_t n_isolated, std::size_t n_total) {
    check_probability(p_c, "p_c");
    check_probability(p_f, "p_f");
    if (n_total == 0) throw DomainError("estimate_ps_first_order: empty network");
    return p_c * p_f * static_cast<double>(n_isolated) / static_cast<double>(n_total);
}

std::vector<FaultSweepRow> run_fault_sweep(const CommittedRoutes& routes, const Router& router,
                                           std::span<const double> p_f_grid, const FaultSweepOptions& options) {
    for (const double p : p_f_grid) check_probability(p, "p_f");
    if (options.replicates == 0) throw DomainError("fault sweep needs at least one replicate");

    struct Counts {
        std::uint64_t rerouted = 0;
        std::uint64_t stranded = 0;
    };
    const FaultField field(options.seed);
    const std::size_t n_grid = p_f_grid.size();
    std::vector<std::vector<Counts>> per_replicate(options.replicates, std::vector<Counts>(n_grid));

    parallel_for(options.replicates, options.threads, [&](std::size_t rep) {
        auto& counts = per_replicate[rep];
        for (const RoutePlan& plan : routes.charging_plans) {
            for (std::size_t g = 0; g < n_grid; ++g) {
                const double p_f = p_f_grid[g];
                const PointFilter is_faulty = [&](std::size_t cp) { return field.faulty(rep, plan.ev_id, cp, p_f); };
                const ReplayOutcome outcome = replay_trip(plan, is_faulty, router, routes.ledger);
                if (outcome.status == ReplayStatus::Rerouted) ++counts[g].rerouted;
                if (outcome.status == ReplayStatus::Stranded) ++counts[g].stranded;
            }
        }
    });

    const auto reps = static_cast<std::uint64_t>(options.replicates);
    std::vector<FaultSweepRow> rows(n_grid);
    for (std::size_t g = 0; g < n_grid; ++g) {
        FaultSweepRow& row = rows[g];
        row.p_f = p_f_grid[g];
        row.trips = routes.trips * reps;
        row.needed_charge = routes.needed_charge * reps;
        row.unroutable = routes.unroutable * reps;
        row.replayed = static_cast<std::uint64_t>(routes.charging_plans.size()) * reps;
        for (const auto& counts : per_replicate) {
            row.rerouted += counts[g].rerouted;
            row.stranded += counts[g].stranded;
        }
        row.p_s = row.trips ? static_cast<double>(row.stranded) / static_cast<double>(row.trips) : 0.0;
        row.p_c = row.trips ? static_cast<double>(row.needed_charge) / static_cast<double>(row.trips) : 0.0;
        const Interval ci = wilson_interval(row.stranded, row.trips);
        row.ci_low = ci.low;
        row.ci_high = ci.high;
    }
    return rows;
}

}  // namespace chargenet
