#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "chargenet/geo.hpp"
#include "chargenet/random.hpp"

namespace chargenet {

struct PopulationCell {
    GeoPoint center;
    double population = 0.0;
};

/// Result of a destination draw: the jittered point, the chosen cell and the
/// ring half-width that produced a non-empty candidate set.
struct DestinationDraw {
    GeoPoint point;
    std::size_t cell = 0;
    double ring_half_width_km = 0.0;
};

/// Population raster of 1 km cells. Immutable once built; every sampling call
/// takes the caller's random stream, so one grid can serve many workers.
class PopulationGrid {
public:
    static constexpr double kCellSizeKm = 1.0;
    /// Ring half-widths tried in order when searching for destination cells.
    static constexpr std::array<double, 4> kRingHalfWidthsKm{0.5, 1.0, 2.0, 5.0};

    /// Throws ValidationError on an empty cell list, a negative or non-finite
    /// population, or a zero total.
    explicit PopulationGrid(std::vector<PopulationCell> cells);

    std::span<const PopulationCell> cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }
    double total_population() const noexcept { return total_; }

    /// Population-weighted cell index.
    std::size_t sample_cell(RandomStream& rng) const;
    /// Uniform point inside the 1 km square centred on `cell`.
    GeoPoint jitter_in_cell(std::size_t cell, RandomStream& rng) const;

    GeoPoint sample_origin(RandomStream& rng) const;

    /// Population-weighted cell whose centre lies within `trip_km` +/- w of
    /// `origin`, widening w through kRingHalfWidthsKm. Empty when even the widest
    /// ring holds no populated cell; the caller is expected to resample.
    /// Throws DomainError for trip_km <= 0.
    std::optional<DestinationDraw> sample_destination(const GeoPoint& origin, double trip_km,
                                                      RandomStream& rng) const;

private:
    std::vector<PopulationCell> cells_;
    std::vector<double> cumulative_;
    double total_ = 0.0;
    GeoGridIndex index_;
};

PopulationGrid load_grid(std::istream& in);
/// Throws DataSourceError when the file cannot be opened.
PopulationGrid load_grid_file(const std::filesystem::path& path);

void write_grid_csv(std::ostream& out, const PopulationGrid& grid);

}  // namespace chargenet
