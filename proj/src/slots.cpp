#include "pcach/slots.hpp"

#include "pcach/errors.hpp"

namespace pcach {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

SlotClock::SlotClock(int slot_minutes, std::int64_t utc_offset_s)
    : slot_minutes_(slot_minutes), utc_offset_s_(utc_offset_s) {
    if (slot_minutes <= 0 || kMinutesPerDay % slot_minutes != 0)
        throw ParameterError("slot_minutes must be a positive divisor of 1440, got " +
                             std::to_string(slot_minutes));
}

std::int64_t SlotClock::absolute_slot(Timestamp t) const {
    return floor_div(t + utc_offset_s_, slot_seconds());
}

Timestamp SlotClock::slot_start(std::int64_t absolute_slot) const {
    return absolute_slot * slot_seconds() - utc_offset_s_;
}

int SlotClock::slot_of_day_abs(std::int64_t absolute_slot) const {
    const auto n = slots_per_day();
    return static_cast<int>(((absolute_slot % n) + n) % n);
}

int minute_of_day(Timestamp t, std::int64_t utc_offset_s) {
    const auto local = t + utc_offset_s;
    const auto sec = local - floor_div(local, kSecondsPerDay) * kSecondsPerDay;
    return static_cast<int>(sec / 60);
}

int day_of_week(Timestamp t, std::int64_t utc_offset_s) {
    // 1970-01-01 was a Thursday.
    const auto day = floor_div(t + utc_offset_s, kSecondsPerDay);
    return static_cast<int>((((day + 3) % 7) + 7) % 7);
}

bool HourWindow::contains_minute(int m) const {
    const int lo = start_hour * 60;
    const int hi = end_hour * 60;
    if (lo == hi) return true;
    if (lo < hi) return m >= lo && m < hi;
    return m >= lo || m < hi;
}

}  // namespace pcach
