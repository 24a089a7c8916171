#include "chargenet/geo.hpp"

#include <algorithm>
#include <cmath>

#include "chargenet/errors.hpp"

namespace chargenet {

namespace {

constexpr double kDegToRad = kPi / 180.0;

double wrap_longitude(double lon) {
    double wrapped = std::fmod(lon + 180.0, 360.0);
    if (wrapped < 0.0) wrapped += 360.0;
    return wrapped - 180.0;
}

}  // namespace

GeoPoint make_point(double lat, double lon) {
    if (!std::isfinite(lat) || !std::isfinite(lon)) throw DomainError("non-finite coordinate");
    if (lat < -90.0 || lat > 90.0) throw DomainError("latitude outside [-90, 90]");
    return GeoPoint{lat, wrap_longitude(lon)};
}

double distance_km(const GeoPoint& a, const GeoPoint& b) noexcept {
    const double phi1 = a.lat * kDegToRad;
    const double phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlambda = (b.lon - a.lon) * kDegToRad;
    const double s1 = std::sin(dphi * 0.5);
    const double s2 = std::sin(dlambda * 0.5);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

GeoPoint offset_km(const GeoPoint& origin, double north_km, double east_km) {
    const double lat = origin.lat + north_km / kKmPerDegree;
    const double coslat = std::cos(origin.lat * kDegToRad);
    const double lon = origin.lon + east_km / (kKmPerDegree * std::max(coslat, 1e-9));
    return make_point(std::clamp(lat, -90.0, 90.0), lon);
}

GeoGridIndex::GeoGridIndex(std::span<const GeoPoint> points, double bucket_deg)
    : points_(points.begin(), points.end()), bucket_deg_(bucket_deg) {
    if (!(bucket_deg > 0.0) || bucket_deg > 90.0) throw DomainError("bucket size must be in (0, 90] degrees");
    rows_ = static_cast<std::int64_t>(std::ceil(180.0 / bucket_deg_)) + 1;
    cols_ = static_cast<std::int64_t>(std::ceil(360.0 / bucket_deg_));
    for (std::size_t i = 0; i < points_.size(); ++i) {
        buckets_[key(row_of(points_[i].lat), col_of(points_[i].lon))].push_back(static_cast<std::uint32_t>(i));
    }
}

std::int64_t GeoGridIndex::row_of(double lat) const noexcept {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((lat + 90.0) / bucket_deg_)), 0, rows_ - 1);
}

std::int64_t GeoGridIndex::col_of(double lon) const noexcept {
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((lon + 180.0) / bucket_deg_)), 0, cols_ - 1);
}

GeoGridIndex::BucketRange GeoGridIndex::range_for(const GeoPoint& center, double outer_km) const noexcept {
    const double dlat = outer_km / kKmPerDegree;
    const double lat_lo = center.lat - dlat;
    const double lat_hi = center.lat + dlat;
    BucketRange r{};
    r.row_begin = row_of(std::max(lat_lo, -90.0));
    r.row_end = row_of(std::min(lat_hi, 90.0));
    const double max_abs_lat = std::max(std::abs(lat_lo), std::abs(lat_hi));
    if (max_abs_lat >= 89.0) {
        r.all_columns = true;
        return r;
    }
    const double dlon = outer_km / (kKmPerDegree * std::cos(max_abs_lat * kDegToRad));
    if (dlon >= 180.0) {
        r.all_columns = true;
        return r;
    }
    r.col_begin = static_cast<std::int64_t>(std::floor((center.lon - dlon + 180.0) / bucket_deg_));
    r.col_end = static_cast<std::int64_t>(std::floor((center.lon + dlon + 180.0) / bucket_deg_));
    r.all_columns = (r.col_end - r.col_begin + 1) >= cols_;
    return r;
}

bool GeoGridIndex::bucket_may_intersect(std::int64_t row, std::int64_t col, const GeoPoint& center,
                                        double inner_km, double outer_km) const noexcept {
    const double lat0 = -90.0 + static_cast<double>(row) * bucket_deg_;
    const double lat1 = std::min(lat0 + bucket_deg_, 90.0);
    const double lon0 = -180.0 + static_cast<double>(col) * bucket_deg_;
    const GeoPoint mid{0.5 * (lat0 + lat1), lon0 + 0.5 * bucket_deg_};
    // Widest east-west extent sits on the equatorward edge.
    const double min_abs_lat = (lat0 <= 0.0 && lat1 >= 0.0) ? 0.0 : std::min(std::abs(lat0), std::abs(lat1));
    const double half_h = 0.5 * (lat1 - lat0) * kKmPerDegree;
    const double half_w = 0.5 * bucket_deg_ * kKmPerDegree * std::cos(min_abs_lat * kDegToRad);
    const double radius = std::hypot(half_h, half_w) * 1.01 + 1e-6;
    const double d = distance_km(center, mid);
    return d - radius <= outer_km && d + radius >= inner_km;
}

}  // namespace chargenet
