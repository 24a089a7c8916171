#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace chargenet {

/// Mean Earth radius (IUGG). Fixed so distances are reproducible bit for bit.
inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kPi = 3.14159265358979323846;
/// Length of one degree of latitude on the sphere.
inline constexpr double kKmPerDegree = kPi * kEarthRadiusKm / 180.0;

struct GeoPoint {
    double lat = 0.0;  ///< degrees, [-90, 90]
    double lon = 0.0;  ///< degrees, [-180, 180)

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Validates latitude and wraps longitude into [-180, 180).
/// Throws DomainError for a latitude outside [-90, 90] or non-finite input.
GeoPoint make_point(double lat, double lon);

/// Great-circle (haversine) distance in km.
double distance_km(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Moves `origin` by the given north/east displacement on the local tangent plane.
/// Only meant for displacements of a few hundred km away from the poles.
GeoPoint offset_km(const GeoPoint& origin, double north_km, double east_km);

/// Fixed-size lat/lon bucket index over a point set. Supports disk and annulus
/// queries; results are exact (every candidate is distance-checked).
class GeoGridIndex {
public:
    GeoGridIndex() = default;
    explicit GeoGridIndex(std::span<const GeoPoint> points, double bucket_deg = 0.05);

    /// Calls `visit(index, distance_km)` for every point with
    /// inner_km <= distance <= outer_km. Buckets are scanned row-major, so the
    /// visiting order is deterministic but not sorted.
    template <typename Visitor>
    void for_each_in_annulus(const GeoPoint& center, double inner_km, double outer_km,
                             Visitor&& visit) const;

    std::size_t size() const noexcept { return points_.size(); }

private:
    struct BucketRange {
        std::int64_t row_begin, row_end;  // inclusive
        std::int64_t col_begin, col_end;  // inclusive, may exceed the column count (wrap)
        bool all_columns;
    };

    std::int64_t row_of(double lat) const noexcept;
    std::int64_t col_of(double lon) const noexcept;
    std::int64_t key(std::int64_t row, std::int64_t col) const noexcept { return row * cols_ + col; }
    BucketRange range_for(const GeoPoint& center, double outer_km) const noexcept;
    bool bucket_may_intersect(std::int64_t row, std::int64_t col, const GeoPoint& center,
                              double inner_km, double outer_km) const noexcept;

    std::vector<GeoPoint> points_;
    double bucket_deg_ = 0.05;
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets_;
};

template <typename Visitor>
void GeoGridIndex::for_each_in_annulus(const GeoPoint& center, double inner_km, double outer_km,
                                       Visitor&& visit) const {
    if (points_.empty() || outer_km < inner_km) return;
    const BucketRange range = range_for(center, outer_km);
    const std::int64_t col_first = range.all_columns ? 0 : range.col_begin;
    const std::int64_t col_last = range.all_columns ? cols_ - 1 : range.col_end;
    for (std::int64_t row = range.row_begin; row <= range.row_end; ++row) {
        for (std::int64_t c = col_first; c <= col_last; ++c) {
            const std::int64_t col = ((c % cols_) + cols_) % cols_;
            const auto it = buckets_.find(key(row, col));
            if (it == buckets_.end()) continue;
            if (!bucket_may_intersect(row, col, center, inner_km, outer_km)) continue;
            for (const std::uint32_t idx : it->second) {
                const double d = distance_km(center, points_[idx]);
                if (d >= inner_km && d <= outer_km) visit(static_cast<std::size_t>(idx), d);
            }
        }
    }
}

}  // namespace chargenet
