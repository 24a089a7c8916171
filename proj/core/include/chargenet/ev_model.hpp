#pragma once

namespace chargenet {

enum class ChargerKind { DC, AC };

/// Vehicle parameterization. Defaults are the typical 24 kWh EV; the on-board
/// AC limit is a scenario parameter (6.6 kW or 22 kW).
struct EvParams {
    double battery_kwh = 24.0;
    double speed_kph = 90.0;
    double max_range_km = 110.0;
    double dc_charge_kw = 45.0;
    double onboard_ac_kw = 22.0;
    double reserve_soc = 0.20;
    double charge_target_soc = 0.80;
    /// Straight-line to road-distance allowance applied to every range.
    double route_scale = 0.85;

    /// Throws ValidationError unless 0 <= reserve < target <= 1 and all
    /// capacities, powers, speeds and the scale are positive.
    void validate() const;
};

double energy_per_km(const EvParams& p);

/// Straight-line distance covered while the state of charge falls from `from_soc` to `to_soc`.
/// Throws DomainError unless from_soc > to_soc.
double max_leg_km(const EvParams& p, double from_soc, double to_soc);

/// State-of-charge fraction consumed over `km` of straight-line distance.
double soc_for_distance(const EvParams& p, double km);

/// Power actually delivered: the lower of the post rating and the vehicle's
/// limit for that kind of post.
double effective_power_kw(const EvParams& p, ChargerKind kind, double point_power_kw);

/// Constant-power charging time in hours. Throws DomainError if to_soc < from_soc
/// or the effective power is not positive.
double charge_duration_h(const EvParams& p, double from_soc, double to_soc, double effective_kw);
double charge_duration_h(const EvParams& p, double from_soc, double to_soc, ChargerKind kind,
                         double point_power_kw);

/// Long-run speed of an endless drive/charge cycle: drive the unscaled
/// reserve-to-target distance at cruising speed, then recharge reserve to target.
double effective_speed_kph(const EvParams& p, double effective_kw);

}  // namespace chargenet
