#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "chargenet/charge_network.hpp"
#include "chargenet/ev_model.hpp"
#include "chargenet/geo.hpp"
#include "chargenet/reservation_ledger.hpp"
#include "chargenet/trip_model.hpp"

namespace chargenet {

enum class ReservationMode {
    /// Planner sees the ledger; waits are known when the route is chosen.
    Aware,
    /// Planner assumes idle posts; waits materialize first-come-first-served at commit.
    Blind,
};

const char* to_string(ReservationMode mode) noexcept;
ReservationMode parse_reservation_mode(const std::string& text);

struct RouterConfig {
    ReservationMode mode = ReservationMode::Aware;
    EvParams ev;
    std::size_t max_stops = 64;
    /// Drop partial routes that cannot beat the best arrival found so far.
    bool prune_best_arrival = true;
    /// Drop partial routes that reach a point later, with no fewer stops, than another.
    bool dominance = true;
};

struct RouteLeg {
    GeoPoint from;
    GeoPoint to;
    double distance_km = 0.0;
    double drive_h = 0.0;
};

struct RouteStop {
    std::size_t cp = 0;
    double arrival_h = 0.0;
    double wait_h = 0.0;
    double charge_start_h = 0.0;
    double charge_end_h = 0.0;
    double soc_in = 0.0;
    double soc_out = 0.0;
};

/// A committed (or candidate) journey: legs.size() == stops.size() + 1.
struct RoutePlan {
    std::size_t ev_id = 0;
    double depart_h = 0.0;
    double arrival_h = 0.0;
    double start_soc = 1.0;
    double soc_at_destination = 0.0;
    std::vector<RouteLeg> legs;
    std::vector<RouteStop> stops;
    double total_time_h = 0.0;
    double route_distance_km = 0.0;
    double direct_distance_km = 0.0;
    bool needed_charging = false;
};

enum class UnroutableReason { NoFeasibleSequence, StopLimit };

struct Unroutable {
    UnroutableReason reason = UnroutableReason::NoFeasibleSequence;
};

using RouteResult = std::variant<RoutePlan, Unroutable>;

/// Generalized planning request. Trips start full with the reserve as the
/// arrival floor; fault rerouting starts mid-journey and may lower the floor
/// for the first leg.
struct RouteQuery {
    std::size_t ev_id = 0;
    GeoPoint start;
    GeoPoint destination;
    double depart_h = 0.0;
    double start_soc = 1.0;
    /// Lowest SoC allowed at the end of the first leg; the reserve if unset.
    std::optional<double> first_leg_floor;
    /// Bookings of this vehicle are ignored when looking for slots.
    std::size_t ignore_ev = kNoEv;
};

/// Returns true for charge points the search may use.
using PointFilter = std::function<bool(std::size_t)>;

struct SearchStats {
    std::size_t labels_created = 0;
    std::size_t labels_expanded = 0;
};

/// Time-optimal charge-point allocation.
///
/// The search grows partial routes from the start outward over reachable
/// charge points, ordered by departure time (arrival + wait + charge). A point
/// is never revisited within one journey. A label whose point lies within range
/// of the destination yields a complete route; the earliest arrival wins, ties
/// broken by fewer stops and then by the lexicographic stop-id sequence.
///
/// Holds a reference to the network, which must outlive the router.
class Router {
public:
    Router(const ChargeNetwork& network, RouterConfig config);

    const RouterConfig& config() const noexcept { return config_; }
    const ChargeNetwork& network() const noexcept { return *network_; }

    /// Limit of the first leg from a full battery down to the reserve.
    double first_leg_limit_km() const;
    /// Limit between stops: charge target down to the reserve.
    double stop_leg_limit_km() const;

    RouteResult plan(const TripRequest& request, const ReservationLedger& ledger,
                     SearchStats* stats = nullptr) const;
    RouteResult plan(const RouteQuery& query, const ReservationLedger& ledger, const PointFilter& usable = {},
                     SearchStats* stats = nullptr) const;

    /// Books every charging interval of `plan` and returns the realized plan.
    /// Aware mode books the planned windows verbatim (a conflict is a bug and
    /// throws ConflictError). Blind mode resolves each stop's start with
    /// earliest_slot in stop order and shifts everything downstream.
    RoutePlan commit(const RoutePlan& plan, ReservationLedger& ledger) const;

private:
    const ChargeNetwork* network_;
    RouterConfig config_;
    /// Neighbors within stop_leg_limit_km(), sorted by (distance, id).
    std::vector<std::vector<PointDistance>> adjacency_;
};

/// Driven distance over elapsed time, including waiting and charging.
double average_trip_speed(const RoutePlan& plan);
/// Straight origin-destination distance over elapsed time.
double direct_average_speed(const RoutePlan& plan);

}  // namespace chargenet
