#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chargenet/charge_network.hpp"
#include "chargenet/random.hpp"
#include "chargenet/reservation_ledger.hpp"
#include "chargenet/router.hpp"

namespace chargenet {

struct FaultConfig {
    double p_f = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Independent faults: each point is drawn faulty with probability p_f.
/// Returns indices in id order.
std::vector<std::size_t> sample_fault_mask(const ChargeNetwork& net, double p_f, RandomStream& rng);

/// Common-random-number fault field. Draw (replicate, trip) sees point `cp` as
/// faulty iff its uniform is below p_f, so the faulty sets are nested as p_f grows.
class FaultField {
public:
    explicit FaultField(std::uint64_t seed) : seed_(seed) {}

    double uniform(std::uint64_t replicate, std::uint64_t trip, std::size_t cp) const noexcept {
        return counter_uniform(seed_, replicate, trip, cp);
    }
    bool faulty(std::uint64_t replicate, std::uint64_t trip, std::size_t cp, double p_f) const noexcept {
        return uniform(replicate, trip, cp) < p_f;
    }

private:
    std::uint64_t seed_;
};

enum class ReplayStatus { CompletedAsPlanned, Rerouted, Stranded };

const char* to_string(ReplayStatus status) noexcept;

struct ReplayOutcome {
    ReplayStatus status = ReplayStatus::CompletedAsPlanned;
    /// Delay against the committed plan; zero unless rerouted and later.
    double extra_time_h = 0.0;
    std::optional<std::size_t> first_faulty_cp;
    std::optional<RoutePlan> reroute;
};

/// Replays a committed plan against a fault pattern (`is_faulty(cp)`).
///
/// The vehicle stops at its first faulty stop and is routed again from there
/// with the charge it arrived with. The first leg may run the battery down to
/// empty; later legs keep the usual reserve. Faulty points are excluded, and
/// other vehicles' bookings in `snapshot` are respected (the vehicle's own are
/// ignored). No route means the vehicle is stranded.
ReplayOutcome replay_trip(const RoutePlan& plan, const PointFilter& is_faulty, const Router& router,
                          const ReservationLedger& snapshot);

/// First-order stranding estimate p_c * p_f * n_isolated / n_total.
/// Throws DomainError for n_total == 0 or probabilities outside [0, 1].
double estimate_ps_first_order(double p_c, double p_f, std::size_t n_isolated, std::size_t n_total);

/// A fault-free pass: every trip planned and booked with all points operational.
struct CommittedRoutes {
    std::uint64_t trips = 0;
    std::uint64_t needed_charge = 0;
    std::uint64_t unroutable = 0;
    /// Realized plans of the routed trips that stop to charge.
    std::vector<RoutePlan> charging_plans;
    ReservationLedger ledger;
};

struct FaultSweepOptions {
    std::size_t replicates = 100;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct FaultSweepRow {
    double p_f = 0.0;
    std::uint64_t trips = 0;          ///< committed trips x replicates
    std::uint64_t needed_charge = 0;  ///< trips needing a stop x replicates
    std::uint64_t replayed = 0;       ///< charging plans replayed
    std::uint64_t rerouted = 0;
    std::uint64_t stranded = 0;
    std::uint64_t unroutable = 0;     ///< fault-free unroutable trips x replicates
    double p_s = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double p_c = 0.0;
};

/// Monte Carlo over fault patterns. Each (replicate, plan) pair draws its own
/// pattern from a FaultField shared across the whole grid.
std::vector<FaultSweepRow> run_fault_sweep(const CommittedRoutes& routes, const Router& router,
                                           std::span<const double> p_f_grid, const FaultSweepOptions& options);

}  // namespace chargenet
