#pragma once

#include <cstdint>

namespace chargenet {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for k successes out of n. n == 0 gives [0, 1].
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = kZ95);

/// Standard error of a binomial proportion p estimated from n trials.
double binomial_sigma(double p, std::uint64_t n);

}  // namespace chargenet
