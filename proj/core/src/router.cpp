#include "chargenet/router.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <fmt/format.h>

#include "chargenet/errors.hpp"

namespace chargenet {

namespace {

constexpr std::size_t kStartNode = std::numeric_limits<std::size_t>::max();
constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();

struct Label {
    std::size_t node = kStartNode;
    double arrival_h = 0.0;
    double charge_start_h = 0.0;
    double depart_h = 0.0;
    double soc_in = 0.0;
    std::uint32_t stops = 0;
    std::uint32_t parent = kNoParent;
    bool dead = false;
};

struct QueueEntry {
    double depart_h;
    std::uint32_t stops;
    std::uint32_t label;
};

struct QueueOrder {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.depart_h != b.depart_h) return a.depart_h > b.depart_h;
        if (a.stops != b.stops) return a.stops > b.stops;
        return a.label > b.label;
    }
};

class Search {
public:
    Search(const Router& router, const RouteQuery& query, const ReservationLedger& ledger,
           const PointFilter& usable, const std::vector<std::vector<PointDistance>>& adjacency)
        : router_(router),
          net_(router.network()),
          cfg_(router.config()),
          query_(query),
          ledger_(ledger),
          usable_(usable),
          adjacency_(adjacency),
          dest_distance_(net_.size(), -1.0),
          pareto_(cfg_.dominance ? net_.size() : 0) {}

    RouteResult run(SearchStats* stats);

private:
    double distance_to_destination(std::size_t node) {
        if (node == kStartNode) return distance_km(query_.start, query_.destination);
        double& cached = dest_distance_[node];
        if (cached < 0.0) cached = distance_km(net_.at(node).location, query_.destination);
        return cached;
    }

    std::vector<std::size_t> sequence(std::uint32_t id) const {
        std::vector<std::size_t> seq;
        for (std::uint32_t at = id; at != kNoParent; at = labels_[at].parent) {
            if (labels_[at].node != kStartNode) seq.push_back(labels_[at].node);
        }
        std::reverse(seq.begin(), seq.end());
        return seq;
    }

    bool visited(std::uint32_t id, std::size_t cp) const {
        for (std::uint32_t at = id; at != kNoParent; at = labels_[at].parent) {
            if (labels_[at].node == cp) return true;
        }
        return false;
    }

    // a at least as good as b for every continuation, including tie-breaks.
    bool dominates(std::uint32_t a, std::uint32_t b) const {
        const Label& la = labels_[a];
        const Label& lb = labels_[b];
        if (la.depart_h > lb.depart_h || la.stops > lb.stops) return false;
        if (la.stops < lb.stops) return true;
        return sequence(a) <= sequence(b);
    }

    // Registers `id` in the Pareto set of its point; false if it is dominated.
    bool admit(std::uint32_t id) {
        if (!cfg_.dominance) return true;
        auto& set = pareto_[labels_[id].node];
        for (const std::uint32_t other : set) {
            if (dominates(other, id)) return false;
        }
        std::erase_if(set, [&](std::uint32_t other) {
            if (!dominates(id, other)) return false;
            labels_[other].dead = true;
            return true;
        });
        set.push_back(id);
        return true;
    }

    void offer_destination(std::uint32_t id, double arrival_h) {
        const Label& l = labels_[id];
        bool better = !best_;
        if (best_) {
            const Label& b = labels_[*best_];
            if (arrival_h != best_arrival_h_) {
                better = arrival_h < best_arrival_h_;
            } else if (l.stops != b.stops) {
                better = l.stops < b.stops;
            } else {
                better = sequence(id) < sequence(*best_);
            }
        }
        if (better) {
            best_ = id;
            best_arrival_h_ = arrival_h;
        }
    }

    RoutePlan build_plan(std::uint32_t id, double arrival_h) const;

    const Router& router_;
    const ChargeNetwork& net_;
    const RouterConfig& cfg_;
    const RouteQuery& query_;
    const ReservationLedger& ledger_;
    const PointFilter& usable_;
    const std::vector<std::vector<PointDistance>>& adjacency_;

    std::vector<Label> labels_;
    std::vector<double> dest_distance_;
    std::vector<std::vector<std::uint32_t>> pareto_;
    std::optional<std::uint32_t> best_;
    double best_arrival_h_ = std::numeric_limits<double>::infinity();
};

RouteResult Search::run(SearchStats* stats) {
    const EvParams& ev = cfg_.ev;
    const double first_floor = query_.first_leg_floor.value_or(ev.reserve_soc);
    const double first_limit = query_.start_soc > first_floor ? max_leg_km(ev, query_.start_soc, first_floor) : 0.0;
    const double stop_limit = router_.stop_leg_limit_km();

    labels_.push_back(Label{kStartNode, query_.depart_h, query_.depart_h, query_.depart_h, query_.start_soc, 0,
                            kNoParent, false});
    const double direct = distance_to_destination(kStartNode);
    if (direct <= first_limit) return build_plan(0, query_.depart_h + direct / ev.speed_kph);

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> frontier;
    frontier.push({query_.depart_h, 0, 0});
    bool hit_stop_limit = false;
    std::vector<PointDistance> start_neighbors;

    while (!frontier.empty()) {
        const QueueEntry entry = frontier.top();
        frontier.pop();
        if (labels_[entry.label].dead) continue;
        if (cfg_.prune_best_arrival && best_ && entry.depart_h > best_arrival_h_) break;
        if (stats) ++stats->labels_expanded;

        const Label current = labels_[entry.label];
        const bool at_start = current.node == kStartNode;
        const double depart_soc = at_start ? query_.start_soc : ev.charge_target_soc;
        const double floor = at_start ? first_floor : ev.reserve_soc;
        const double limit = at_start ? first_limit : stop_limit;

        const double to_dest = distance_to_destination(current.node);
        if (to_dest <= limit) offer_destination(entry.label, current.depart_h + to_dest / ev.speed_kph);

        if (current.stops >= cfg_.max_stops) {
            hit_stop_limit = true;
            continue;
        }

        const std::vector<PointDistance>* neighbors = nullptr;
        if (at_start) {
            start_neighbors = limit > 0.0 ? net_.within_radius(query_.start, limit) : std::vector<PointDistance>{};
            neighbors = &start_neighbors;
        } else {
            neighbors = &adjacency_[current.node];
        }

        for (const PointDistance& nb : *neighbors) {
            const ChargePoint& cp = net_.at(nb.index);
            if (!cp.operational || (usable_ && !usable_(nb.index))) continue;
            const double soc_in = depart_soc - soc_for_distance(ev, nb.distance_km);
            // Stopping without gaining charge can never shorten a straight-line route.
            if (soc_in >= ev.charge_target_soc || soc_in < floor - 1e-12) continue;
            if (visited(entry.label, nb.index)) continue;

            const double arrival_h = current.depart_h + nb.distance_km / ev.speed_kph;
            const double duration_h = charge_duration_h(ev, soc_in, ev.charge_target_soc, cp.kind, cp.power_kw);
            const double start_h = cfg_.mode == ReservationMode::Aware
                                       ? ledger_.earliest_slot(nb.index, arrival_h, duration_h, query_.ignore_ev)
                                       : arrival_h;
            const double depart_h = start_h + duration_h;
            // Straight-line driving time is a lower bound on the remaining journey.
            if (cfg_.prune_best_arrival && best_ &&
                (depart_h > best_arrival_h_ ||
                 depart_h + distance_to_destination(nb.index) / ev.speed_kph > best_arrival_h_)) {
                continue;
            }

            const auto id = static_cast<std::uint32_t>(labels_.size());
            labels_.push_back(Label{nb.index, arrival_h, start_h, depart_h, soc_in, current.stops + 1, entry.label,
                                    false});
            if (!admit(id)) {
                labels_.pop_back();
                continue;
            }
            if (stats) ++stats->labels_created;
            frontier.push({depart_h, current.stops + 1, id});
        }
    }

    if (!best_) {
        return Unroutable{hit_stop_limit ? UnroutableReason::StopLimit : UnroutableReason::NoFeasibleSequence};
    }
    return build_plan(*best_, best_arrival_h_);
}

RoutePlan Search::build_plan(std::uint32_t id, double arrival_h) const {
    const EvParams& ev = cfg_.ev;
    std::vector<std::uint32_t> chain;
    for (std::uint32_t at = id; at != kNoParent; at = labels_[at].parent) chain.push_back(at);
    std::reverse(chain.begin(), chain.end());

    RoutePlan plan;
    plan.ev_id = query_.ev_id;
    plan.depart_h = query_.depart_h;
    plan.start_soc = query_.start_soc;
    plan.direct_distance_km = distance_km(query_.start, query_.destination);
    const double first_floor = query_.first_leg_floor.value_or(ev.reserve_soc);
    plan.needed_charging = !(query_.start_soc > first_floor &&
                             plan.direct_distance_km <= max_leg_km(ev, query_.start_soc, first_floor));

    GeoPoint at = query_.start;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        const Label& l = labels_[chain[i]];
        const GeoPoint next = net_.at(l.node).location;
        const double d = distance_km(at, next);
        plan.legs.push_back({at, next, d, d / ev.speed_kph});
        plan.stops.push_back({l.node, l.arrival_h, l.charge_start_h - l.arrival_h, l.charge_start_h, l.depart_h,
                              l.soc_in, ev.charge_target_soc});
        at = next;
    }
    const double last = distance_km(at, query_.destination);
    plan.legs.push_back({at, query_.destination, last, last / ev.speed_kph});
    const double depart_soc = plan.stops.empty() ? query_.start_soc : ev.charge_target_soc;
    plan.soc_at_destination = depart_soc - soc_for_distance(ev, last);
    plan.arrival_h = arrival_h;
    plan.total_time_h = arrival_h - query_.depart_h;
    for (const auto& leg : plan.legs) plan.route_distance_km += leg.distance_km;
    return plan;
}

}  // namespace

const char* to_string(ReservationMode mode) noexcept {
    return mode == ReservationMode::Aware ? "reservation-aware" : "reservation-blind";
}

ReservationMode parse_reservation_mode(const std::string& text) {
    if (text == "reservation-aware" || text == "aware") return ReservationMode::Aware;
    if (text == "reservation-blind" || text == "blind") return ReservationMode::Blind;
    throw ValidationError(fmt::format("unknown reservation mode '{}'", text));
}

Router::Router(const ChargeNetwork& network, RouterConfig config) : network_(&network), config_(config) {
    config_.ev.validate();
    if (config_.max_stops < 1) throw ValidationError("max_stops must be at least 1");
    const double limit = stop_leg_limit_km();
    adjacency_.resize(network.size());
    for (std::size_t i = 0; i < network.size(); ++i) {
        adjacency_[i] = network.within_radius(network.at(i).location, limit);
        std::erase_if(adjacency_[i], [i](const PointDistance& pd) { return pd.index == i; });
    }
}

double Router::first_leg_limit_km() const { return max_leg_km(config_.ev, 1.0, config_.ev.reserve_soc); }

double Router::stop_leg_limit_km() const {
    return max_leg_km(config_.ev, config_.ev.charge_target_soc, config_.ev.reserve_soc);
}

RouteResult Router::plan(const TripRequest& request, const ReservationLedger& ledger, SearchStats* stats) const {
    RouteQuery q;
    q.ev_id = request.ev_id;
    q.start = request.origin;
    q.destination = request.destination;
    q.depart_h = request.depart_h;
    return plan(q, ledger, {}, stats);
}

RouteResult Router::plan(const RouteQuery& query, const ReservationLedger& ledger, const PointFilter& usable,
                         SearchStats* stats) const {
    if (!(query.start_soc >= 0.0 && query.start_soc <= 1.0)) throw DomainError("start_soc outside [0, 1]");
    Search search(*this, query, ledger, usable, adjacency_);
    return search.run(stats);
}

RoutePlan Router::commit(const RoutePlan& plan, ReservationLedger& ledger) const {
    RoutePlan realized = plan;
    if (config_.mode == ReservationMode::Aware) {
        for (const auto& s : plan.stops) ledger.commit({s.cp, plan.ev_id, s.charge_start_h, s.charge_end_h});
        return realized;
    }
    double t = plan.depart_h;
    for (std::size_t i = 0; i < realized.stops.size(); ++i) {
        RouteStop& s = realized.stops[i];
        const ChargePoint& cp = network_->at(s.cp);
        const double duration_h = charge_duration_h(config_.ev, s.soc_in, s.soc_out, cp.kind, cp.power_kw);
        s.arrival_h = t + realized.legs[i].drive_h;
        s.charge_start_h = ledger.earliest_slot(s.cp, s.arrival_h, duration_h);
        s.wait_h = s.charge_start_h - s.arrival_h;
        s.charge_end_h = s.charge_start_h + duration_h;
        ledger.commit({s.cp, plan.ev_id, s.charge_start_h, s.charge_end_h});
        t = s.charge_end_h;
    }
    realized.arrival_h = t + realized.legs.back().drive_h;
    realized.total_time_h = realized.arrival_h - realized.depart_h;
    return realized;
}

double average_trip_speed(const RoutePlan& plan) {
    if (!(plan.total_time_h > 0.0)) throw DomainError("average_trip_speed: non-positive trip time");
    return plan.route_distance_km / plan.total_time_h;
}

double direct_average_speed(const RoutePlan& plan) {
    if (!(plan.total_time_h > 0.0)) throw DomainError("direct_average_speed: non-positive trip time");
    return plan.direct_distance_km / plan.total_time_h;
}

}  // namespace chargenet
