#include "chargenet/population.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "chargenet/csv.hpp"
#include "chargenet/errors.hpp"

namespace chargenet {

namespace {

std::size_t pick_weighted(std::span<const double> cumulative, double u) {
    // u in (0, 1); first entry strictly greater than u * total.
    const double target = u * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    const auto idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

}  // namespace

PopulationGrid::PopulationGrid(std::vector<PopulationCell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw ValidationError("population grid: no cells");
    cumulative_.reserve(cells_.size());
    std::vector<GeoPoint> centers;
    centers.reserve(cells_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const double pop = cells_[i].population;
        if (!std::isfinite(pop) || pop < 0.0) {
            throw ValidationError(fmt::format("population grid: cell {} has invalid population {}", i, pop));
        }
        running += pop;
        cumulative_.push_back(running);
        centers.push_back(cells_[i].center);
    }
    total_ = running;
    if (!(total_ > 0.0)) throw ValidationError("population grid: zero total population");
    index_ = GeoGridIndex(centers);
}

std::size_t PopulationGrid::sample_cell(RandomStream& rng) const {
    // Zero-population cells have zero-width cumulative steps and are never chosen.
    return pick_weighted(cumulative_, rng.uniform01());
}

GeoPoint PopulationGrid::jitter_in_cell(std::size_t cell, RandomStream& rng) const {
    const double half = 0.5 * kCellSizeKm;
    const double north = rng.uniform(-half, half);
    const double east = rng.uniform(-half, half);
    return offset_km(cells_.at(cell).center, north, east);
}

GeoPoint PopulationGrid::sample_origin(RandomStream& rng) const {
    const std::size_t cell = sample_cell(rng);
    return jitter_in_cell(cell, rng);
}

std::optional<DestinationDraw> PopulationGrid::sample_destination(const GeoPoint& origin, double trip_km,
                                                                  RandomStream& rng) const {
    if (!(trip_km > 0.0)) throw DomainError("sample_destination: trip length must be positive");
    std::vector<std::size_t> candidates;
    std::vector<double> weights;
    for (const double w : kRingHalfWidthsKm) {
        candidates.clear();
        index_.for_each_in_annulus(origin, std::max(0.0, trip_km - w), trip_km + w,
                                   [&](std::size_t idx, double) {
                                       if (cells_[idx].population > 0.0) candidates.push_back(idx);
                                   });
        if (candidates.empty()) continue;
        std::sort(candidates.begin(), candidates.end());
        weights.resize(candidates.size());
        double running = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            running += cells_[candidates[i]].population;
            weights[i] = running;
        }
        const std::size_t cell = candidates[pick_weighted(weights, rng.uniform01())];
        return DestinationDraw{jitter_in_cell(cell, rng), cell, w};
    }
    return std::nullopt;
}

PopulationGrid load_grid(std::istream& in) {
    csv::Reader reader(in);
    std::vector<std::string> fields;
    if (!reader.next(fields)) throw ValidationError("population grid: no cells");
    if (fields != std::vector<std::string>{"lat", "lon", "population"}) {
        throw ParseError(reader.line(), "expected header 'lat,lon,population'");
    }
    std::vector<PopulationCell> cells;
    while (reader.next(fields)) {
        const std::size_t line = reader.line();
        if (fields.size() != 3) throw ParseError(line, fmt::format("expected 3 fields, got {}", fields.size()));
        const double lat = csv::parse_double(fields[0], line, "lat");
        const double lon = csv::parse_double(fields[1], line, "lon");
        const double pop = csv::parse_double(fields[2], line, "population");
        if (pop < 0.0) throw ValidationError(fmt::format("line {}: negative population {}", line, fields[2]));
        GeoPoint center;
        try {
            center = make_point(lat, lon);
        } catch (const DomainError& e) {
            throw ParseError(line, e.what());
        }
        cells.push_back({center, pop});
    }
    return PopulationGrid(std::move(cells));
}

PopulationGrid load_grid_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataSourceError(fmt::format("cannot open population file '{}'", path.string()));
    return load_grid(in);
}

void write_grid_csv(std::ostream& out, const PopulationGrid& grid) {
    out << "lat,lon,population\n";
    for (const auto& c : grid.cells()) {
        out << csv::format_double(c.center.lat) << ',' << csv::format_double(c.center.lon) << ','
            << csv::format_double(c.population) << '\n';
    }
}

}  // namespace chargenet
