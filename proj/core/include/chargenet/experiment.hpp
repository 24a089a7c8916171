#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chargenet/charge_network.hpp"
#include "chargenet/fault_sim.hpp"
#include "chargenet/population.hpp"
#include "chargenet/router.hpp"
#include "chargenet/stats.hpp"
#include "chargenet/trip_model.hpp"

namespace chargenet {

/// Produces the trip of EV `ev_index` in replicate `replicate`. Implementations
/// must be deterministic in both arguments so that the trips of an n-EV fleet
/// are a prefix of the trips of any larger fleet.
class TripSource {
public:
    virtual ~TripSource() = default;
    virtual TripRequest trip(std::uint64_t replicate, std::size_t ev_index) const = 0;
};

/// Origin by population, length from the trip-length distribution, destination
/// by population on the ring at that length. A length whose ring is empty is
/// redrawn; after repeated failures the origin is redrawn as well.
class PopulationTripSource final : public TripSource {
public:
    static constexpr int kLengthAttempts = 64;

    PopulationTripSource(const PopulationGrid& grid, const TripLengthDistribution& lengths, std::uint64_t seed)
        : grid_(&grid), lengths_(&lengths), seed_(seed) {}

    TripRequest trip(std::uint64_t replicate, std::size_t ev_index) const override;

private:
    const PopulationGrid* grid_;
    const TripLengthDistribution* lengths_;
    std::uint64_t seed_;
};

struct ScenarioConfig {
    std::size_t n_ev = 1000;
    RouterConfig router;
    std::uint64_t seed = 1;
    std::size_t replicates = 1;
    std::vector<double> speed_thresholds_kph{60.0, 40.0, 10.0};
    unsigned threads = 1;

    /// Throws ConfigError.
    void validate() const;
};

/// Raw counters; fractions are derived. Merging is plain addition.
struct ScenarioMetrics {
    std::uint64_t trips = 0;
    std::uint64_t needing_charge = 0;
    std::uint64_t zero_stop = 0;
    std::uint64_t routed_charging = 0;
    std::uint64_t unroutable = 0;
    std::uint64_t stop_limit = 0;  ///< subset of unroutable
    std::vector<double> thresholds_kph;
    std::vector<std::uint64_t> below;  ///< routed trips with average speed strictly below each threshold
    double speed_sum_kph = 0.0;        ///< over routed trips
    double direct_speed_sum_kph = 0.0;
    double wait_sum_h = 0.0;

    std::uint64_t routed() const noexcept { return zero_stop + routed_charging; }
    double frac_needing_charge() const noexcept;
    double frac_unroutable() const noexcept;
    double frac_below(std::size_t i) const noexcept;
    double mean_speed_kph() const noexcept;
    double mean_direct_speed_kph() const noexcept;

    void merge(const ScenarioMetrics& other);
};

/// One replicate: trips, their realized plans (in processing order) and the final ledger.
struct ReplicateRun {
    ScenarioMetrics metrics;
    std::vector<RoutePlan> plans;
    std::vector<std::size_t> unroutable_evs;
    ReservationLedger ledger;
};

/// Plans and commits `cfg.n_ev` trips of `replicate` in priority order.
ReplicateRun run_replicate(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source,
                           std::uint64_t replicate, bool keep_plans = false);

/// Aggregates `cfg.replicates` independent replicates (run on cfg.threads workers).
/// Deterministic for a fixed seed regardless of the thread count.
ScenarioMetrics run_scenario(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source);

/// Fault-free pass over replicate 0, packaged for run_fault_sweep.
CommittedRoutes commit_fault_free(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source);

struct CapacityOptions {
    double threshold_kph = 40.0;
    double target_p = 1e-4;
    std::size_t ceiling = 1u << 20;
    /// Replicates are added until each fleet size is evaluated on this many trips.
    std::uint64_t min_trips = 10000;
    double growth = 2.0;
};

struct CapacityPoint {
    std::size_t n_ev = 0;
    std::size_t replicates = 0;
    std::uint64_t trips = 0;
    std::uint64_t failures = 0;
    Interval ci;
};

struct CapacityResult {
    /// Largest passing fleet size; empty when even one EV fails the target.
    std::optional<std::size_t> capacity;
    bool reached_ceiling = false;
    std::vector<CapacityPoint> evaluated;  ///< in evaluation order
};

/// Largest fleet whose Wilson 95% upper bound on P(average speed < threshold)
/// stays at or below target_p: geometric growth to bracket, then bisection.
/// Throws ConfigError for target_p outside (0, 1].
CapacityResult capacity_search(const ScenarioConfig& cfg, const ChargeNetwork& net, const TripSource& source,
                               const CapacityOptions& options);

struct InfraCostModel {
    double dc_install_eur = 48000.0;
    double ac_install_eur = 12500.0;
    double dc_annual_eur = 6000.0;
    double ac_annual_eur = 350.0;
    double lifespan_years = 20.0;

    void validate() const;
};

/// (installation amortized over the lifespan + annual maintenance) / users.
double cost_per_user(std::size_t n_dc, std::size_t n_ac, const InfraCostModel& model, double n_users);
double cost_per_user(const ChargeNetwork& net, const InfraCostModel& model, double n_users);

}  // namespace chargenet
