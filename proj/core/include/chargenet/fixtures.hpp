#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chargenet/charge_network.hpp"
#include "chargenet/experiment.hpp"
#include "chargenet/population.hpp"

namespace chargenet::fixtures {

/// Gaussian population bump, positioned in km from the grid's south-west corner.
struct Settlement {
    double north_km = 0.0;
    double east_km = 0.0;
    double sigma_km = 5.0;
    double peak = 1000.0;  ///< people per cell at the centre
};

struct SyntheticGridSpec {
    GeoPoint south_west{52.0, -9.0};
    std::size_t rows = 200;  ///< 1 km cells
    std::size_t cols = 200;
    double floor = 2.0;  ///< rural population per cell
    std::vector<Settlement> settlements;
};

/// 500 x 500 km with a handful of cities.
SyntheticGridSpec regional_grid_spec();
/// 200 x 200 km, five towns; pairs with the 50-point network.
SyntheticGridSpec compact_grid_spec();

/// Point `north_km`/`east_km` from the south-west corner, on the grid's own
/// row/column convention.
GeoPoint grid_point(const SyntheticGridSpec& spec, double north_km, double east_km);

PopulationGrid make_synthetic_grid(const SyntheticGridSpec& spec);

struct SyntheticNetworkSpec {
    std::size_t lattice_rows = 5;
    std::size_t lattice_cols = 5;
    double lattice_jitter_km = 4.0;
    std::size_t weighted_points = 25;  ///< placed by population
    double dc_fraction = 0.1;
    double dc_power_kw = kDefaultDcPowerKw;
    double ac_power_kw = kDefaultAcPowerKw;
    std::uint64_t seed = 11;
};

/// Jittered lattice for coverage plus population-weighted points; ids "CP001"...
ChargeNetwork make_synthetic_network(const SyntheticGridSpec& grid_spec, const PopulationGrid& grid,
                                     const SyntheticNetworkSpec& spec);

/// Points on the equator at the given distances (km) east of lon 0, where
/// along-track distance equals great-circle distance.
GeoPoint equator_point(double km);

struct Corridor {
    ChargeNetwork network;
    GeoPoint origin;
    GeoPoint destination;
};

Corridor make_corridor(const std::vector<double>& cp_km, double destination_km, ChargerKind kind = ChargerKind::DC,
                       double power_kw = kDefaultDcPowerKw);

/// Hub with one isolated point to the east and a nine-point cluster to the west.
/// Trips out of the hub either stay local (no charging) or cross to the town
/// behind one of the two sides.
struct Star {
    ChargeNetwork network;
    GeoPoint hub;
    GeoPoint east_town;   ///< reached through the isolated point
    GeoPoint west_town;   ///< reached through the cluster
    GeoPoint local_town;  ///< within range of the hub
    std::size_t isolated_index = 0;
};

Star make_star(const GeoPoint& hub = {53.0, -8.0});

/// Even EVs charge (every tenth of them through the isolated point), odd EVs
/// make a short local trip. Departures are spread uniformly over a week.
class StarTripSource final : public TripSource {
public:
    static constexpr double kHorizonH = 168.0;

    StarTripSource(const Star& star, std::uint64_t seed) : star_(&star), seed_(seed) {}
    TripRequest trip(std::uint64_t replicate, std::size_t ev_index) const override;

private:
    const Star* star_;
    std::uint64_t seed_;
};

/// Cycles through a fixed list; EV i gets trips[i % size] with ev_id i and priority i.
class FixedTripSource final : public TripSource {
public:
    explicit FixedTripSource(std::vector<TripRequest> trips);
    TripRequest trip(std::uint64_t replicate, std::size_t ev_index) const override;

private:
    std::vector<TripRequest> trips_;
};

}  // namespace chargenet::fixtures
