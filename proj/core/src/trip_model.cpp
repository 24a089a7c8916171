#include "chargenet/trip_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chargenet/errors.hpp"

namespace chargenet {

namespace {

constexpr double kQuadRelTol = 1e-9;
constexpr unsigned kQuadMaxDepth = 20;
constexpr double kFirstLogKnotKm = 1e-3;

// The density is sharply peaked at a few km and then decays over hundreds;
// splitting the support keeps each adaptive integration well conditioned.
std::vector<double> breakpoints(double lo, double hi) {
    static constexpr std::array<double, 8> kSplits{1.0, 5.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0};
    std::vector<double> pts{lo};
    for (const double s : kSplits) {
        if (s > lo && s < hi) pts.push_back(s);
    }
    pts.push_back(hi);
    return pts;
}

template <typename F>
double integrate_split(F&& f, double lo, double hi) {
    using boost::math::quadrature::gauss_kronrod;
    if (!(hi > lo)) return 0.0;
    const auto pts = breakpoints(lo, hi);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        sum += gauss_kronrod<double, 31>::integrate(f, pts[i], pts[i + 1], kQuadMaxDepth, kQuadRelTol);
    }
    return sum;
}

}  // namespace

TripLengthDistribution::TripLengthDistribution(TripLengthParams params) : params_(params) {
    if (!(params_.coefficient > 0.0) || !(params_.rate > 0.0) || !(params_.power > 0.0) ||
        !(params_.max_km > kFirstLogKnotKm)) {
        throw DomainError("trip-length parameters must be positive");
    }
    normalization_ = integrate_raw(0.0, params_.max_km);
    mean_ = integrate_split([this](double y) { return y * raw_pdf(y); }, 0.0, params_.max_km) / normalization_;

    // Knot 0 sits at y = 0; the rest are log-spaced up to max_km.
    knots_.resize(kTableKnots);
    knot_cdf_.resize(kTableKnots);
    knots_[0] = 0.0;
    const double log_lo = std::log(kFirstLogKnotKm);
    const double log_hi = std::log(params_.max_km);
    for (std::size_t k = 1; k < kTableKnots; ++k) {
        const double t = static_cast<double>(k - 1) / static_cast<double>(kTableKnots - 2);
        knots_[k] = std::exp(log_lo + t * (log_hi - log_lo));
    }
    knots_.back() = params_.max_km;
    using boost::math::quadrature::gauss_kronrod;
    const auto f = [this](double y) { return raw_pdf(y); };
    double running = 0.0;
    knot_cdf_[0] = 0.0;
    for (std::size_t k = 1; k < kTableKnots; ++k) {
        running += gauss_kronrod<double, 31>::integrate(f, knots_[k - 1], knots_[k], kQuadMaxDepth, kQuadRelTol);
        knot_cdf_[k] = running;
    }
    for (double& c : knot_cdf_) c /= running;
    knot_cdf_.back() = 1.0;
}

double TripLengthDistribution::raw_pdf(double y_km) const {
    if (!(y_km >= 0.0)) throw DomainError("trip length must be non-negative");
    return params_.coefficient * y_km * std::exp(-params_.rate * std::pow(y_km, params_.power));
}

double TripLengthDistribution::pdf(double y_km) const {
    const double raw = raw_pdf(y_km);
    return y_km > params_.max_km ? 0.0 : raw / normalization_;
}

double TripLengthDistribution::integrate_raw(double a, double b) const {
    return integrate_split([this](double y) { return raw_pdf(y); }, a, b);
}

double TripLengthDistribution::cdf(double y_km) const {
    if (!(y_km >= 0.0)) throw DomainError("trip length must be non-negative");
    if (y_km >= params_.max_km) return 1.0;
    return std::min(1.0, integrate_raw(0.0, y_km) / normalization_);
}

double TripLengthDistribution::tail_probability(double y0_km) const {
    if (!(y0_km >= 0.0)) throw DomainError("trip length must be non-negative");
    if (y0_km == 0.0) return 1.0;
    if (y0_km >= params_.max_km) return 0.0;
    return std::min(1.0, integrate_raw(y0_km, params_.max_km) / normalization_);
}

double TripLengthDistribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must be in [0, 1]");
    const auto it = std::upper_bound(knot_cdf_.begin(), knot_cdf_.end(), u);
    if (it == knot_cdf_.end()) return knots_.back();
    const auto hi = static_cast<std::size_t>(it - knot_cdf_.begin());
    const std::size_t lo = hi - 1;
    const double span = knot_cdf_[hi] - knot_cdf_[lo];
    const double t = (u - knot_cdf_[lo]) / span;
    return knots_[lo] + t * (knots_[hi] - knots_[lo]);
}

}  // namespace chargenet
