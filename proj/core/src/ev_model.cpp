#include "chargenet/ev_model.hpp"

#include <algorithm>
#include <cmath>

#include "chargenet/errors.hpp"

namespace chargenet {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void EvParams::validate() const {
    if (!positive(battery_kwh)) throw ValidationError("battery_kwh must be positive");
    if (!positive(speed_kph)) throw ValidationError("speed_kph must be positive");
    if (!positive(max_range_km)) throw ValidationError("max_range_km must be positive");
    if (!positive(dc_charge_kw)) throw ValidationError("dc_charge_kw must be positive");
    if (!positive(onboard_ac_kw)) throw ValidationError("onboard_ac_kw must be positive");
    if (!positive(route_scale)) throw ValidationError("route_scale must be positive");
    if (!(reserve_soc >= 0.0 && reserve_soc < charge_target_soc && charge_target_soc <= 1.0)) {
        throw ValidationError("require 0 <= reserve_soc < charge_target_soc <= 1");
    }
}

double energy_per_km(const EvParams& p) { return p.battery_kwh / p.max_range_km; }

double max_leg_km(const EvParams& p, double from_soc, double to_soc) {
    if (!(from_soc > to_soc)) throw DomainError("max_leg_km: from_soc must exceed to_soc");
    return (from_soc - to_soc) * p.max_range_km * p.route_scale;
}

double soc_for_distance(const EvParams& p, double km) { return km / (p.max_range_km * p.route_scale); }

double effective_power_kw(const EvParams& p, ChargerKind kind, double point_power_kw) {
    const double vehicle_limit = kind == ChargerKind::DC ? p.dc_charge_kw : p.onboard_ac_kw;
    return std::min(point_power_kw, vehicle_limit);
}

double charge_duration_h(const EvParams& p, double from_soc, double to_soc, double effective_kw) {
    if (!(to_soc >= from_soc)) throw DomainError("charge_duration_h: to_soc below from_soc");
    if (!(effective_kw > 0.0)) throw DomainError("charge_duration_h: zero effective power");
    return (to_soc - from_soc) * p.battery_kwh / effective_kw;
}

double charge_duration_h(const EvParams& p, double from_soc, double to_soc, ChargerKind kind,
                         double point_power_kw) {
    return charge_duration_h(p, from_soc, to_soc, effective_power_kw(p, kind, point_power_kw));
}

double effective_speed_kph(const EvParams& p, double effective_kw) {
    const double cycle_km = (p.charge_target_soc - p.reserve_soc) * p.max_range_km;
    const double drive_h = cycle_km / p.speed_kph;
    return cycle_km / (drive_h + charge_duration_h(p, p.reserve_soc, p.charge_target_soc, effective_kw));
}

}  // namespace chargenet
