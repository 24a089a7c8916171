#pragma once

// Minute-granularity occupancy model of one charge point. All times are whole
// minutes passed to the ledger as plain doubles, so both sides agree exactly.

#include <cstdint>
#include <vector>

namespace oracle {

class MinuteTimeline {
public:
    explicit MinuteTimeline(int horizon) : busy_(static_cast<std::size_t>(horizon), false) {}

    void occupy(int start, int end) {
        for (int m = start; m < end; ++m) busy_.at(static_cast<std::size_t>(m)) = true;
    }
    void free(int start, int end) {
        for (int m = start; m < end; ++m) busy_.at(static_cast<std::size_t>(m)) = false;
    }
    bool free_range(int start, int end) const {
        for (int m = start; m < end; ++m) {
            if (m < static_cast<int>(busy_.size()) && busy_[static_cast<std::size_t>(m)]) return false;
        }
        return true;
    }
    /// First minute s >= not_before with [s, s + duration) free.
    int earliest(int not_before, int duration) const {
        int s = not_before;
        while (!free_range(s, s + duration)) ++s;
        return s;
    }

private:
    std::vector<bool> busy_;
};

}  // namespace oracle
