#pragma once

#include <cstdint>

#include "pcach/trace.hpp"

namespace pcach {

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr int kMinutesPerDay = 1440;

/// Maps timestamps onto fixed-length slots of the phone's local day.
/// Absolute slots count from the epoch; slot-of-day wraps every 24 h.
class SlotClock {
public:
    /// Throws ParameterError unless slot_minutes is positive and divides 1440.
    explicit SlotClock(int slot_minutes = 15, std::int64_t utc_offset_s = 0);

    int slot_minutes() const { return slot_minutes_; }
    std::int64_t utc_offset_s() const { return utc_offset_s_; }
    std::int64_t slot_seconds() const { return std::int64_t{slot_minutes_} * 60; }
    int slots_per_day() const { return kMinutesPerDay / slot_minutes_; }

    std::int64_t absolute_slot(Timestamp t) const;
    Timestamp slot_start(std::int64_t absolute_slot) const;
    int slot_of_day(Timestamp t) const { return slot_of_day_abs(absolute_slot(t)); }
    int slot_of_day_abs(std::int64_t absolute_slot) const;

private:
    int slot_minutes_;
    std::int64_t utc_offset_s_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b);

/// Local minute of day in [0, 1440).
int minute_of_day(Timestamp t, std::int64_t utc_offset_s);
/// Local day of week, 0 = Monday ... 6 = Sunday.
int day_of_week(Timestamp t, std::int64_t utc_offset_s);
inline bool is_weekday(Timestamp t, std::int64_t utc_offset_s) { return day_of_week(t, utc_offset_s) < 5; }

/// Half-open window of local hours; wraps midnight when start > end.
struct HourWindow {
    int start_hour = 20;
    int end_hour = 8;

    bool contains_minute(int minute_of_day) const;
};

}  // namespace pcach
