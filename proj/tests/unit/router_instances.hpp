#pragma once

#include <random>
#include <vector>

#include "chargenet/charge_network.hpp"
#include "chargenet/geo.hpp"
#include "chargenet/reservation_ledger.hpp"

// Random small routing instances: up to six points scattered around the
// straight line between origin and destination, and a random prior ledger.
struct RouterInstance {
    chargenet::ChargeNetwork network;
    chargenet::GeoPoint origin;
    chargenet::GeoPoint destination;
    double depart_h = 0.0;
    chargenet::ReservationLedger ledger;
};

inline RouterInstance random_instance(std::mt19937_64& gen, std::size_t max_points = 6, double max_trip_km = 200.0) {
    using namespace chargenet;
    std::uniform_real_distribution<double> trip(60.0, max_trip_km);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> count(0, max_points);
    const GeoPoint origin{53.0, -8.0};
    const double length = trip(gen);
    RouterInstance inst;
    inst.origin = origin;
    inst.destination = offset_km(origin, (unit(gen) - 0.5) * 30.0, length);
    inst.depart_h = unit(gen) * 2.0;
    const std::size_t n = count(gen);
    std::vector<ChargePoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const bool dc = unit(gen) < 0.5;
        const double power = dc ? (unit(gen) < 0.8 ? 50.0 : 22.0) : (unit(gen) < 0.8 ? 22.0 : 7.0);
        pts.push_back({"C" + std::to_string(i),
                       offset_km(origin, (unit(gen) - 0.5) * 40.0, unit(gen) * (length + 10.0)),
                       dc ? ChargerKind::DC : ChargerKind::AC, power, unit(gen) > 0.05});
    }
    inst.network = ChargeNetwork(std::move(pts));
    inst.ledger = ReservationLedger(n);
    std::uniform_int_distribution<int> bookings(0, 5);
    for (std::size_t cp = 0; cp < n; ++cp) {
        double t = unit(gen) * 0.5;
        const int k = bookings(gen);
        for (int b = 0; b < k; ++b) {
            const double start = t + unit(gen) * 1.0;
            const double end = start + 0.05 + unit(gen) * 0.8;
            inst.ledger.commit({cp, 1000 + static_cast<std::size_t>(b), start, end});
            t = end;
        }
    }
    return inst;
}
