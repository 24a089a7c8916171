#include "chargenet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "chargenet/errors.hpp"
#include "chargenet/parallel.hpp"

namespace chargenet {

namespace {

constexpr int kOriginAttempts = 1000;

double ratio(std::uint64_t k, std::uint64_t n) {
    return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n);
}

ReplicateRun run_with_router(const ScenarioConfig& cfg, const Router& router, const TripSource& source,
                             std::uint64_t replicate, bool keep_plans) {
    std::vector<TripRequest> trips;
    trips.reserve(cfg.n_ev);
    for (std::size_t i = 0; i < cfg.n_ev; ++i) trips.push_back(source.trip(replicate, i));
    std::vector<std::size_t> order(trips.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return trips[a].priority != trips[b].priority ? trips[a].priority < trips[b].priority : a < b;
    });

    ReplicateRun run;
    run.ledger = ReservationLedger(router.network().size());
    ScenarioMetrics& m = run.metrics;
    m.thresholds_kph = cfg.speed_thresholds_kph;
    m.below.assign(m.thresholds_kph.size(), 0);

    for (const std::size_t idx : order) {
        const TripRequest& trip = trips[idx];
        ++m.trips;
        RouteResult result = router.plan(trip, run.ledger);
        if (const auto* failed = std::get_if<Unroutable>(&result)) {
            ++m.needing_charge;
            ++m.unroutable;
            if (failed->reason == UnroutableReason::StopLimit) ++m.stop_limit;
            run.unroutable_evs.push_back(trip.ev_id);
            continue;
        }
        RoutePlan realized = router.commit(std::get<RoutePlan>(result), run.ledger);
        if (realized.stops.empty()) {
            ++m.zero_stop;
        } else {
            ++m.needing_charge;
            ++m.routed_charging;
        }
        const double speed = realized.total_time_h > 0.0 ? average_trip_speed(realized) : cfg.router.ev.speed_kph;
        const double direct = realized.total_time_h > 0.0 ? direct_average_speed(realized) : cfg.router.ev.speed_kph;
        m.speed_sum_kph += speed;
        m.direct_speed_sum_kph += direct;
        for (std::size_t t = 0; t < m.thresholds_kph.size(); ++t) {
            if (speed < m.thresholds_kph[t]) ++m.below[t];
        }
        for (const auto& s : realized.stops) m.wait_sum_h += s.wait_h;
        if (keep_plans) run.plans.push_back(std::move(realized));
    }
    return run;
}

}  // namespace

TripRequest PopulationTripSource::trip(std::uint64_t replicate, std::size_t ev_index) const {
    RandomStream rng(derive_seed(seed_, {replicate, static_cast<std::uint64_t>(ev_index)}));
    TripRequest req;
    req.ev_id = ev_index;
    req.priority = rng.uniform01();
    for (int attempt = 0; attempt < kOriginAttempts; ++attempt) {
        req.origin = grid_->sample_origin(rng);
        for (int k = 0; k < kLengthAttempts; ++k) {
            const double y = lengths_->sample_km(rng);
            if (const auto dest = grid_->sample_destination(req.origin, y, rng)) {
                req.destination = dest->point;
                req.trip_km = y;
                return req;
            }
        }
    }
    throw DataSourceError("population grid cannot realize sampled trip lengths");
}

void ScenarioConfig::validate() const {
    if (n_ev < 1) throw ConfigError("n_ev must be at least 1");
    if (replicates < 1) throw ConfigError("replicates must be at least 1");
    if (router.max_stops < 1) throw ConfigError("max_stops must be at least 1");
    for (const double t : speed_thresholds_kph) {
        if (!(t > 0.0)) throw ConfigError("speed thresholds must be positive");
    }
    try {
        router.ev.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(e.what());
    }
}

double ScenarioMetrics::frac_needing_charge() const noexcept { return ratio(needing_charge, trips); }
double ScenarioMetrics::frac_unroutable() const noexcept { return ratio(unroutable, trips); }
double ScenarioMetrics::frac_below(std::size_t i) const noexcept { return ratio(below.at(i), trips); }
double ScenarioMetrics::mean_speed_kph() const noexcept {
    return routed() == 0 ? 0.0 : speed_sum_kph / static_cast<double>(routed());
}
double ScenarioMetrics::mean_direct_speed_kph() const noexcept {
    return routed() == 0 ? 0.0 : direct_speed_sum_kph / static_cast<double>(routed());
}

void ScenarioMetrics::merge(const ScenarioMetrics& other) {
    if (thresholds_kph.empty() && below.empty()) {
        thresholds_kph = other.thresholds_kph;
        below.assign(other.below.size(), 0);
    }
    if (thresholds_kph != other.thresholds_kph) throw std::logic_error("merging metrics with different thresholds");
    trips += other.trips;
    needing_charge += other.needing_charge;
    zero_stop += other.zero_stop;
    routed_charging += other.routed_charging;
    unroutable += other.unroutable;
    stop_limit += other.stop_limit;
    for (std::size_t i = 0; i < below.size(); ++i) below[i] += other.below[i];
    speed_sum_kph += other.speed_sum_kph;
    direct_speed_sum_kph += other.direct_speed_sum_kph;
    wait_sum_h += other.wait_sum_h;
}

ReplicateRun run_replicate(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source,
                           std::uint64_t replicate, bool keep_plans) {
    cfg.validate();
    const Router router(net, cfg.router);
    return run_with_router(cfg, router, source, replicate, keep_plans);
}

ScenarioMetrics run_scenario(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source) {
    cfg.validate();
    const Router router(net, cfg.router);
    std::vector<ScenarioMetrics> per_replicate(cfg.replicates);
    parallel_for(cfg.replicates, cfg.threads, [&](std::size_t rep) {
        per_replicate[rep] = run_with_router(cfg, router, source, rep, false).metrics;
    });
    ScenarioMetrics total;
    total.thresholds_kph = cfg.speed_thresholds_kph;
    total.below.assign(total.thresholds_kph.size(), 0);
    for (const auto& m : per_replicate) total.merge(m);
    return total;
}

CommittedRoutes commit_fault_free(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source) {
    ReplicateRun run = run_replicate(cfg, net, source, 0, true);
    CommittedRoutes routes;
    routes.trips = run.metrics.trips;
    routes.needed_charge = run.metrics.needing_charge;
    routes.unroutable = run.metrics.unroutable;
    for (auto& plan : run.plans) {
        if (!plan.stops.empty()) routes.charging_plans.push_back(std::move(plan));
    }
    routes.ledger = std::move(run.ledger);
    return routes;
}

CapacityResult capacity_search(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source,
                               const CapacityOptions& options) {
    cfg.validate();
    if (!(options.target_p > 0.0 && options.target_p <= 1.0)) throw ConfigError("capacity target must be in (0, 1]");
    if (!(options.threshold_kph > 0.0)) throw ConfigError("capacity threshold must be positive");
    if (options.ceiling < 1) throw ConfigError("capacity ceiling must be at least 1");
    if (!(options.growth > 1.0)) throw ConfigError("capacity growth factor must exceed 1");

    CapacityResult result;
    std::map<std::size_t, bool> verdicts;
    const auto passes = [&](std::size_t n) {
        if (const auto it = verdicts.find(n); it != verdicts.end()) return it->second;
        ScenarioConfig point = cfg;
        point.n_ev = n;
        point.speed_thresholds_kph = {options.threshold_kph};
        const auto needed = static_cast<std::size_t>((options.min_trips + n - 1) / n);
        point.replicates = std::max(cfg.replicates, needed);
        const ScenarioMetrics m = run_scenario(point, net, source);
        CapacityPoint cp{n, point.replicates, m.trips, m.below[0], wilson_interval(m.below[0], m.trips)};
        result.evaluated.push_back(cp);
        const bool ok = cp.ci.high <= options.target_p;
        verdicts[n] = ok;
        return ok;
    };

    if (!passes(1)) return result;
    std::size_t lo = 1;
    std::size_t hi = 0;
    while (hi == 0) {
        if (lo >= options.ceiling) {
            result.reached_ceiling = true;
            result.capacity = lo;
            return result;
        }
        const auto grown = static_cast<std::size_t>(std::ceil(static_cast<double>(lo) * options.growth));
        const std::size_t n = std::min(options.ceiling, std::max(lo + 1, grown));
        if (passes(n)) {
            lo = n;
        } else {
            hi = n;
        }
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (passes(mid) ? lo : hi) = mid;
    }
    result.capacity = lo;
    return result;
}

void InfraCostModel::validate() const {
    if (!(dc_install_eur > 0.0 && ac_install_eur > 0.0 && dc_annual_eur > 0.0 && ac_annual_eur > 0.0 &&
          lifespan_years > 0.0)) {
        throw ConfigError("cost model values must be positive");
    }
}

double cost_per_user(std::size_t n_dc, std::size_t n_ac, const InfraCostModel& model, double n_users) {
    if (!(n_users > 0.0)) throw DomainError("cost_per_user: number of users must be positive");
    const double dc = static_cast<double>(n_dc);
    const double ac = static_cast<double>(n_ac);
    const double install = dc * model.dc_install_eur + ac * model.ac_install_eur;
    const double maintenance = dc * model.dc_annual_eur + ac * model.ac_annual_eur;
    return (install / model.lifespan_years + maintenance) / n_users;
}

double cost_per_user(const ChargeNetwork& net, const InfraCostModel& model, double n_users) {
    return cost_per_user(net.count(ChargerKind::DC), net.count(ChargerKind::AC), model, n_users);
}

}  // namespace chargenet
