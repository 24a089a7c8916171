#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "chargenet/ev_model.hpp"
#include "chargenet/geo.hpp"

namespace chargenet {

inline constexpr double kDefaultDcPowerKw = 50.0;
inline constexpr double kDefaultAcPowerKw = 22.0;

/// One charging post. Each post serves a single vehicle at a time; a site with
/// several posts is several records.
struct ChargePoint {
    std::string id;
    GeoPoint location;
    ChargerKind kind = ChargerKind::DC;
    double power_kw = kDefaultDcPowerKw;
    bool operational = true;
};

struct PointDistance {
    std::size_t index = 0;
    double distance_km = 0.0;
};

/// Registry of charge points with a spatial index.
///
/// Points are stored sorted by id, so index order and id order coincide: any
/// ordering by (distance, index) is also an ordering by (distance, id).
class ChargeNetwork {
public:
    ChargeNetwork() = default;
    /// Throws ValidationError on duplicate ids, empty ids or non-positive power.
    explicit ChargeNetwork(std::vector<ChargePoint> points);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::span<const ChargePoint> points() const noexcept { return points_; }
    const ChargePoint& at(std::size_t index) const { return points_.at(index); }
    std::optional<std::size_t> find(const std::string& id) const;

    /// All points within r_km of `center`, sorted by (distance, id).
    std::vector<PointDistance> within_radius(const GeoPoint& center, double r_km) const;

    /// Points whose nearest other point is farther than r_km, in id order.
    std::vector<std::size_t> isolated_points(double r_km) const;

    /// Copy of the network with one extra point per target, co-located with it.
    /// The duplicate gets the id "<target>+r<n>" with the smallest unused n.
    /// Throws ValidationError for an unknown target id.
    ChargeNetwork with_colocated_redundancy(std::span<const std::string> target_ids) const;

    std::size_t count(ChargerKind kind) const noexcept;

private:
    std::vector<ChargePoint> points_;
    GeoGridIndex index_;
};

/// Radius below which a stranded vehicle at the reserve floor can still reach
/// another point: reserve * max range * route scale.
double isolation_radius_km(const EvParams& p);

ChargerKind parse_charger_kind(const std::string& text);
const char* to_string(ChargerKind kind) noexcept;

/// Reads `id,lat,lon,kind,power_kw` records. An optional sixth column
/// `operational` (0/1) is accepted when the header names it.
ChargeNetwork load_network(std::istream& in);
ChargeNetwork load_network_file(const std::filesystem::path& path);

void write_network_csv(std::ostream& out, const ChargeNetwork& net);

}  // namespace chargenet
