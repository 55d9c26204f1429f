#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pcach/connectivity.hpp"
#include "pcach/slots.hpp"
#include "pcach/trace.hpp"

namespace pcach {

struct DailyTraffic {
    std::int64_t day = 0;  // UTC days since epoch
    std::uint64_t cellular_bytes = 0;
    std::uint64_t wifi_bytes = 0;
};

struct TrafficSplit {
    std::uint64_t cellular_bytes = 0;
    std::uint64_t wifi_bytes = 0;
    std::vector<DailyTraffic> per_day;  // ascending, only days with samples

    std::uint64_t total_bytes() const { return cellular_bytes + wifi_bytes; }
    /// 0 when the trace moved no data.
    double cellular_fraction() const;
};

/// Each sample's bytes go wholly to its active network; NONE counts for neither.
TrafficSplit traffic_split(const Trace& trace);

struct CdfPoint {
    double value = 0;
    double fraction = 0;
};

/// Empirical CDF over admitted gap durations (open and excluded gaps are skipped).
std::vector<CdfPoint> gap_duration_cdf(std::span<const WifiGap> gaps);
/// Empirical CDF of raw values, one step per distinct value.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);
/// Fraction of mass at or below x; 0 for an empty CDF.
double cdf_at(std::span<const CdfPoint> cdf, double x);

struct SlotOfDayHistogram {
    int slot_minutes = 15;
    std::vector<std::uint64_t> counts;

    explicit SlotOfDayHistogram(int slot_minutes = 15);
    void add(const SlotOfDayHistogram& other);
};

struct EventHistograms {
    SlotOfDayHistogram cut;
    SlotOfDayHistogram resume;
};

/// Buckets cut and resume times by local slot of day.
EventHistograms event_time_histogram(std::span<const WifiGap> gaps, const SlotClock& clock);

/// Cellular bytes in [cut, min(cut + horizon, gap end)) summed over all gaps,
/// divided by the trace's total cellular bytes (0 when there are none).
double precache_bound(const Trace& trace, std::span<const WifiGap> gaps, std::int64_t horizon_s);

struct BoundBytes {
    std::uint64_t precacheable = 0;
    std::uint64_t cellular = 0;
};
/// Numerator and denominator of precache_bound, for corpus aggregation.
BoundBytes precache_bytes(const Trace& trace, std::span<const WifiGap> gaps, std::int64_t horizon_s);

/// Horizon sweep in minutes.
inline const std::vector<int> kDefaultHorizonsMinutes = {15, 30, 60, 120, 240};

}  // namespace pcach
