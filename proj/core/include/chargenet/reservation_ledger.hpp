#pragma once

#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

namespace chargenet {

class ChargeNetwork;

inline constexpr std::size_t kNoEv = std::numeric_limits<std::size_t>::max();

/// A half-open charging interval [start_h, end_h) at one charge point.
struct Booking {
    std::size_t cp = 0;
    std::size_t ev = 0;
    double start_h = 0.0;
    double end_h = 0.0;

    friend bool operator==(const Booking&, const Booking&) = default;
};

/// Per-charge-point bookings, kept sorted by start and pairwise disjoint.
/// Only charging occupies a post; a vehicle waiting for its slot does not.
class ReservationLedger {
public:
    ReservationLedger() = default;
    explicit ReservationLedger(std::size_t n_points) : by_point_(n_points) {}

    std::size_t point_count() const noexcept { return by_point_.size(); }

    /// Smallest s >= not_before such that [s, s + duration) overlaps no booking at `cp`.
    /// Bookings owned by `ignore_ev` are treated as absent. Throws DomainError
    /// for a non-positive duration.
    double earliest_slot(std::size_t cp, double not_before, double duration_h,
                         std::size_t ignore_ev = kNoEv) const;

    /// Throws ConflictError if the booking overlaps an existing one, DomainError
    /// if end <= start.
    void commit(const Booking& booking);

    /// Removes every booking held by `ev`. Unknown ids are a no-op.
    void release(std::size_t ev);

    std::span<const Booking> bookings(std::size_t cp) const { return by_point_.at(cp); }
    std::size_t size() const noexcept { return total_; }

    /// Diagnostic dump: `cp_id,ev_id,start_h,end_h`, grouped by point in id order.
    void dump_csv(std::ostream& out, const ChargeNetwork& net) const;

private:
    std::vector<std::vector<Booking>> by_point_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> points_of_ev_;
    std::size_t total_ = 0;
};

}  // namespace chargenet
