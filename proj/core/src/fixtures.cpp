#include "chargenet/fixtures.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "chargenet/errors.hpp"

namespace chargenet::fixtures {

SyntheticGridSpec regional_grid_spec() {
    SyntheticGridSpec s;
    s.south_west = {51.4, -10.6};
    s.rows = 500;
    s.cols = 500;
    s.floor = 3.0;
    s.settlements = {
        {240.0, 420.0, 9.0, 4500.0}, {120.0, 170.0, 6.0, 1600.0}, {330.0, 210.0, 6.0, 1100.0},
        {80.0, 330.0, 5.0, 900.0},   {420.0, 360.0, 7.0, 1300.0}, {250.0, 250.0, 90.0, 25.0},
    };
    return s;
}

SyntheticGridSpec compact_grid_spec() {
    SyntheticGridSpec s;
    s.south_west = {52.6, -8.6};
    s.rows = 200;
    s.cols = 200;
    s.floor = 2.0;
    s.settlements = {
        {100.0, 100.0, 6.0, 3000.0}, {40.0, 40.0, 4.0, 1200.0}, {160.0, 50.0, 4.0, 1000.0},
        {50.0, 165.0, 4.0, 1100.0},  {165.0, 160.0, 4.0, 900.0},
    };
    return s;
}

GeoPoint grid_point(const SyntheticGridSpec& spec, double north_km, double east_km) {
    const double lat = spec.south_west.lat + north_km / kKmPerDegree;
    const double lon = spec.south_west.lon + east_km / (kKmPerDegree * std::cos(lat * kPi / 180.0));
    return make_point(lat, lon);
}

PopulationGrid make_synthetic_grid(const SyntheticGridSpec& spec) {
    if (spec.rows == 0 || spec.cols == 0) throw ValidationError("synthetic grid needs at least one cell");
    std::vector<PopulationCell> cells;
    cells.reserve(spec.rows * spec.cols);
    for (std::size_t r = 0; r < spec.rows; ++r) {
        const double north = static_cast<double>(r) + 0.5;
        for (std::size_t c = 0; c < spec.cols; ++c) {
            const double east = static_cast<double>(c) + 0.5;
            double pop = spec.floor;
            for (const auto& s : spec.settlements) {
                const double dn = north - s.north_km;
                const double de = east - s.east_km;
                pop += s.peak * std::exp(-(dn * dn + de * de) / (2.0 * s.sigma_km * s.sigma_km));
            }
            cells.push_back({grid_point(spec, north, east), std::round(pop)});
        }
    }
    return PopulationGrid(std::move(cells));
}

ChargeNetwork make_synthetic_network(const SyntheticGridSpec& grid_spec, const PopulationGrid& grid,
                                     const SyntheticNetworkSpec& spec) {
    RandomStream rng(spec.seed);
    std::vector<GeoPoint> sites;
    const double rows_km = static_cast<double>(grid_spec.rows);
    const double cols_km = static_cast<double>(grid_spec.cols);
    for (std::size_t i = 0; i < spec.lattice_rows; ++i) {
        for (std::size_t j = 0; j < spec.lattice_cols; ++j) {
            const double north = (static_cast<double>(i) + 0.5) * rows_km / static_cast<double>(spec.lattice_rows) +
                                 rng.uniform(-spec.lattice_jitter_km, spec.lattice_jitter_km);
            const double east = (static_cast<double>(j) + 0.5) * cols_km / static_cast<double>(spec.lattice_cols) +
                                rng.uniform(-spec.lattice_jitter_km, spec.lattice_jitter_km);
            sites.push_back(grid_point(grid_spec, north, east));
        }
    }
    for (std::size_t k = 0; k < spec.weighted_points; ++k) sites.push_back(grid.sample_origin(rng));

    std::vector<std::size_t> order(sites.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    const auto n_dc = static_cast<std::size_t>(std::lround(spec.dc_fraction * static_cast<double>(sites.size())));
    std::vector<bool> is_dc(sites.size(), false);
    for (std::size_t k = 0; k < n_dc && k < order.size(); ++k) is_dc[order[k]] = true;

    std::vector<ChargePoint> points;
    points.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const auto kind = is_dc[i] ? ChargerKind::DC : ChargerKind::AC;
        points.push_back({fmt::format("CP{:03}", i + 1), sites[i], kind,
                          kind == ChargerKind::DC ? spec.dc_power_kw : spec.ac_power_kw, true});
    }
    return ChargeNetwork(std::move(points));
}

GeoPoint equator_point(double km) { return make_point(0.0, km / kKmPerDegree); }

Corridor make_corridor(const std::vector<double>& cp_km, double destination_km, ChargerKind kind, double power_kw) {
    std::vector<ChargePoint> points;
    for (std::size_t i = 0; i < cp_km.size(); ++i) {
        points.push_back({fmt::format("K{:03}", i + 1), equator_point(cp_km[i]), kind, power_kw, true});
    }
    return {ChargeNetwork(std::move(points)), equator_point(0.0), equator_point(destination_km)};
}

Star make_star(const GeoPoint& hub) {
    // (north, east) offsets from the hub in km
    constexpr std::pair<double, double> kCluster[] = {
        {0.0, -62.0}, {2.0, -63.0}, {-2.0, -63.0}, {0.0, -64.0}, {3.0, -64.0},
        {-3.0, -65.0}, {1.0, -65.0}, {-1.0, -66.0}, {2.0, -66.0},
    };
    std::vector<ChargePoint> points;
    points.push_back({"E01", offset_km(hub, 0.0, 73.5), ChargerKind::DC, kDefaultDcPowerKw, true});
    int k = 1;
    for (const auto& [n, e] : kCluster) {
        points.push_back({fmt::format("W{:02}", k++), offset_km(hub, n, e), ChargerKind::DC, kDefaultDcPowerKw, true});
    }
    Star star{ChargeNetwork(std::move(points)), hub, offset_km(hub, 0.0, 119.5), offset_km(hub, 0.0, -109.0),
              offset_km(hub, 10.0, 0.0), 0};
    star.isolated_index = *star.network.find("E01");
    return star;
}

TripRequest StarTripSource::trip(std::uint64_t replicate, std::size_t ev_index) const {
    RandomStream rng(derive_seed(seed_, {replicate, ev_index}));
    TripRequest t;
    t.ev_id = ev_index;
    t.priority = rng.uniform01();
    t.depart_h = rng.uniform(0.0, kHorizonH);
    t.origin = offset_km(star_->hub, rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
    const GeoPoint* target = &star_->local_town;
    if (ev_index % 2 == 0) target = (ev_index / 2) % 10 == 0 ? &star_->east_town : &star_->west_town;
    t.destination = offset_km(*target, rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
    t.trip_km = distance_km(t.origin, t.destination);
    return t;
}

FixedTripSource::FixedTripSource(std::vector<TripRequest> trips) : trips_(std::move(trips)) {
    if (trips_.empty()) throw ValidationError("FixedTripSource needs at least one trip");
}

TripRequest FixedTripSource::trip(std::uint64_t, std::size_t ev_index) const {
    TripRequest t = trips_[ev_index % trips_.size()];
    t.ev_id = ev_index;
    t.priority = static_cast<double>(ev_index);
    return t;
}

}  // namespace chargenet::fixtures
