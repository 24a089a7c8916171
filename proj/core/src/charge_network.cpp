#include "chargenet/charge_network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include <fmt/format.h>

#include "chargenet/csv.hpp"
#include "chargenet/errors.hpp"

namespace chargenet {

ChargeNetwork::ChargeNetwork(std::vector<ChargePoint> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end(),
              [](const ChargePoint& a, const ChargePoint& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (p.id.empty()) throw ValidationError("charge point with empty id");
        if (i > 0 && points_[i - 1].id == p.id) throw ValidationError(fmt::format("duplicate charge point id '{}'", p.id));
        if (!(p.power_kw > 0.0) || !std::isfinite(p.power_kw)) {
            throw ValidationError(fmt::format("charge point '{}' has non-positive power", p.id));
        }
    }
    std::vector<GeoPoint> locations;
    locations.reserve(points_.size());
    for (const auto& p : points_) locations.push_back(p.location);
    index_ = GeoGridIndex(locations, 0.25);
}

std::optional<std::size_t> ChargeNetwork::find(const std::string& id) const {
    const auto it = std::lower_bound(points_.begin(), points_.end(), id,
                                     [](const ChargePoint& p, const std::string& key) { return p.id < key; });
    if (it == points_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

std::vector<PointDistance> ChargeNetwork::within_radius(const GeoPoint& center, double r_km) const {
    if (!(r_km >= 0.0)) throw DomainError("within_radius: negative radius");
    std::vector<PointDistance> out;
    index_.for_each_in_annulus(center, 0.0, r_km, [&](std::size_t idx, double d) { out.push_back({idx, d}); });
    std::sort(out.begin(), out.end(), [](const PointDistance& a, const PointDistance& b) {
        return a.distance_km != b.distance_km ? a.distance_km < b.distance_km : a.index < b.index;
    });
    return out;
}

std::vector<std::size_t> ChargeNetwork::isolated_points(double r_km) const {
    if (!(r_km >= 0.0)) throw DomainError("isolated_points: negative radius");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        bool has_neighbor = false;
        index_.for_each_in_annulus(points_[i].location, 0.0, r_km, [&](std::size_t idx, double) {
            if (idx != i) has_neighbor = true;
        });
        if (!has_neighbor) out.push_back(i);
    }
    return out;
}

ChargeNetwork ChargeNetwork::with_colocated_redundancy(std::span<const std::string> target_ids) const {
    std::vector<ChargePoint> augmented(points_.begin(), points_.end());
    std::unordered_set<std::string> taken;
    for (const auto& p : points_) taken.insert(p.id);
    for (const auto& id : target_ids) {
        const auto idx = find(id);
        if (!idx) throw ValidationError(fmt::format("redundancy target '{}' not in network", id));
        ChargePoint copy = points_[*idx];
        for (int n = 1;; ++n) {
            std::string candidate = fmt::format("{}+r{}", id, n);
            if (taken.insert(candidate).second) {
                copy.id = std::move(candidate);
                break;
            }
        }
        copy.operational = true;
        augmented.push_back(std::move(copy));
    }
    return ChargeNetwork(std::move(augmented));
}

std::size_t ChargeNetwork::count(ChargerKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(points_.begin(), points_.end(), [kind](const ChargePoint& p) { return p.kind == kind; }));
}

double isolation_radius_km(const EvParams& p) { return p.reserve_soc * p.max_range_km * p.route_scale; }

ChargerKind parse_charger_kind(const std::string& text) {
    if (text == "DC") return ChargerKind::DC;
    if (text == "AC") return ChargerKind::AC;
    throw ValidationError(fmt::format("unknown charger kind '{}' (expected DC or AC)", text));
}

const char* to_string(ChargerKind kind) noexcept { return kind == ChargerKind::DC ? "DC" : "AC"; }

ChargeNetwork load_network(std::istream& in) {
    csv::Reader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) return ChargeNetwork{};
    const std::vector<std::string> base{"id", "lat", "lon", "kind", "power_kw"};
    bool with_status = false;
    if (fields.size() == 6 && fields[5] == "operational") {
        with_status = true;
        fields.pop_back();
    }
    if (fields != base) throw ParseError(reader.line(), "expected header 'id,lat,lon,kind,power_kw'");
    const std::size_t expected = with_status ? 6 : 5;

    std::vector<ChargePoint> points;
    std::unordered_set<std::string> seen;
    while (reader.next(fields)) {
        const std::size_t line = reader.line();
        if (fields.size() != expected) {
            throw ParseError(line, fmt::format("expected {} fields, got {}", expected, fields.size()));
        }
        ChargePoint p;
        p.id = fields[0];
        if (!seen.insert(p.id).second) throw ValidationError(fmt::format("duplicate charge point id '{}'", p.id));
        try {
            p.location = make_point(csv::parse_double(fields[1], line, "lat"), csv::parse_double(fields[2], line, "lon"));
        } catch (const DomainError& e) {
            throw ParseError(line, e.what());
        }
        p.kind = parse_charger_kind(fields[3]);
        p.power_kw = csv::parse_double(fields[4], line, "power_kw");
        if (with_status) {
            if (fields[5] != "0" && fields[5] != "1") throw ParseError(line, "operational must be 0 or 1");
            p.operational = fields[5] == "1";
        }
        points.push_back(std::move(p));
    }
    return ChargeNetwork(std::move(points));
}

ChargeNetwork load_network_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataSourceError(fmt::format("cannot open charge-point file '{}'", path.string()));
    return load_network(in);
}

void write_network_csv(std::ostream& out, const ChargeNetwork& net) {
    const auto pts = net.points();
    const bool with_status =
        std::any_of(pts.begin(), pts.end(), [](const ChargePoint& p) { return !p.operational; });
    out << "id,lat,lon,kind,power_kw" << (with_status ? ",operational\n" : "\n");
    for (const auto& p : pts) {
        out << p.id << ',' << csv::format_double(p.location.lat) << ',' << csv::format_double(p.location.lon) << ','
            << to_string(p.kind) << ',' << csv::format_double(p.power_kw);
        if (with_status) out << ',' << (p.operational ? '1' : '0');
        out << '\n';
    }
}

}  // namespace chargenet
