#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chargenet/geo.hpp"
#include "chargenet/random.hpp"

namespace chargenet {

/// Coefficients of the empirical trip-length density a * y * exp(-b * y^c), y in km.
struct TripLengthParams {
    double coefficient = 1.2059;
    double rate = 2.7733;
    double power = 0.33;
    /// Upper support bound; mass beyond is below 1e-9.
    double max_km = 2000.0;
};

/// Trip-length distribution with quadrature-based normalization and a
/// 4096-knot inverse-CDF table for sampling. Immutable after construction.
class TripLengthDistribution {
public:
    static constexpr std::size_t kTableKnots = 4096;

    explicit TripLengthDistribution(TripLengthParams params = {});

    const TripLengthParams& params() const noexcept { return params_; }

    /// The density exactly as fitted, without renormalization.
    double raw_pdf(double y_km) const;
    /// Renormalized density; zero beyond max_km. Throws DomainError for y < 0.
    double pdf(double y_km) const;
    double cdf(double y_km) const;
    /// P(Y > y0) by direct quadrature of the upper tail.
    double tail_probability(double y0_km) const;
    /// Integral of the raw density over [0, max_km].
    double normalization() const noexcept { return normalization_; }
    double mean_km() const noexcept { return mean_; }

    /// Table inverse CDF for u in [0, 1].
    double quantile(double u) const;
    double sample_km(RandomStream& rng) const { return quantile(rng.uniform01()); }

    std::span<const double> knots_km() const noexcept { return knots_; }
    std::span<const double> knot_cdf() const noexcept { return knot_cdf_; }

private:
    double integrate_raw(double a, double b) const;

    TripLengthParams params_;
    double normalization_ = 0.0;
    double mean_ = 0.0;
    std::vector<double> knots_;
    std::vector<double> knot_cdf_;
};

/// A sampled journey: one per EV, all departing together.
struct TripRequest {
    std::size_t ev_id = 0;
    GeoPoint origin;
    GeoPoint destination;
    double trip_km = 0.0;  ///< sampled length (the realized direct distance may differ slightly)
    double depart_h = 0.0;
    double priority = 0.0;  ///< processing-order key; lower is served first
};

}  // namespace chargenet
