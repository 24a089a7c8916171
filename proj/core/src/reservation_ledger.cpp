#include "chargenet/reservation_ledger.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "chargenet/charge_network.hpp"
#include "chargenet/csv.hpp"
#include "chargenet/errors.hpp"

namespace chargenet {

double ReservationLedger::earliest_slot(std::size_t cp, double not_before, double duration_h,
                                        std::size_t ignore_ev) const {
    if (!(duration_h > 0.0)) throw DomainError("earliest_slot: duration must be positive");
    const auto& list = by_point_.at(cp);
    // First booking that ends after not_before; everything earlier cannot interfere.
    auto it = std::upper_bound(list.begin(), list.end(), not_before,
                               [](double t, const Booking& b) { return t < b.end_h; });
    double candidate = not_before;
    for (; it != list.end(); ++it) {
        if (it->ev == ignore_ev) continue;
        if (candidate + duration_h <= it->start_h) break;
        candidate = std::max(candidate, it->end_h);
    }
    return candidate;
}

void ReservationLedger::commit(const Booking& booking) {
    if (!(booking.end_h > booking.start_h)) throw DomainError("booking must have end > start");
    if (booking.cp >= by_point_.size()) by_point_.resize(booking.cp + 1);
    auto& list = by_point_[booking.cp];
    const auto pos = std::lower_bound(list.begin(), list.end(), booking.start_h,
                                      [](const Booking& b, double t) { return b.start_h < t; });
    const auto overlaps = [&](const Booking& other) {
        return booking.start_h < other.end_h && other.start_h < booking.end_h;
    };
    if ((pos != list.end() && overlaps(*pos)) || (pos != list.begin() && overlaps(*std::prev(pos)))) {
        const Booking& other = (pos != list.end() && overlaps(*pos)) ? *pos : *std::prev(pos);
        throw ConflictError(fmt::format("booking [{}, {}) for ev {} at point {} overlaps [{}, {}) of ev {}",
                                        booking.start_h, booking.end_h, booking.ev, booking.cp, other.start_h,
                                        other.end_h, other.ev));
    }
    list.insert(pos, booking);
    points_of_ev_[booking.ev].push_back(booking.cp);
    ++total_;
}

void ReservationLedger::release(std::size_t ev) {
    const auto found = points_of_ev_.find(ev);
    if (found == points_of_ev_.end()) return;
    auto cps = std::move(found->second);
    points_of_ev_.erase(found);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    for (const std::size_t cp : cps) {
        auto& list = by_point_[cp];
        const auto before = list.size();
        std::erase_if(list, [ev](const Booking& b) { return b.ev == ev; });
        total_ -= before - list.size();
    }
}

void ReservationLedger::dump_csv(std::ostream& out, const ChargeNetwork& net) const {
    out << "cp_id,ev_id,start_h,end_h\n";
    for (std::size_t cp = 0; cp < by_point_.size(); ++cp) {
        for (const auto& b : by_point_[cp]) {
            out << net.at(cp).id << ',' << b.ev << ',' << csv::format_double(b.start_h) << ','
                << csv::format_double(b.end_h) << '\n';
        }
    }
}

}  // namespace chargenet
