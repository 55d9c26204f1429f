#include "pcach/mining.hpp"

#include <algorithm>
#include <map>

namespace pcach {

double TrafficSplit::cellular_fraction() const {
    const auto total = total_bytes();
    return total == 0 ? 0.0 : static_cast<double>(cellular_bytes) / static_cast<double>(total);
}

TrafficSplit traffic_split(const Trace& trace) {
    TrafficSplit out;
    std::map<std::int64_t, DailyTraffic> days;
    for (const auto& s : trace.samples) {
        if (s.active == Network::None) continue;
        const auto bytes = s.total_bytes();
        const auto day = floor_div(s.timestamp, kSecondsPerDay);
        auto& d = days[day];
        d.day = day;
        if (s.active == Network::Cellular) {
            out.cellular_bytes += bytes;
            d.cellular_bytes += bytes;
        } else {
            out.wifi_bytes += bytes;
            d.wifi_bytes += bytes;
        }
    }
    for (const auto& [_, d] : days) out.per_day.push_back(d);
    return out;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
    std::vector<CdfPoint> cdf;
    if (values.empty()) return cdf;
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        cdf.push_back({values[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

std::vector<CdfPoint> gap_duration_cdf(std::span<const WifiGap> gaps) {
    std::vector<double> d;
    for (const auto& g : gaps)
        if (g.admitted()) d.push_back(static_cast<double>(*g.duration_s()));
    return empirical_cdf(std::move(d));
}

double cdf_at(std::span<const CdfPoint> cdf, double x) {
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x, [](double v, const CdfPoint& p) { return v < p.value; });
    if (it == cdf.begin()) return 0.0;
    return std::prev(it)->fraction;
}

SlotOfDayHistogram::SlotOfDayHistogram(int slot_minutes)
    : slot_minutes(slot_minutes), counts(static_cast<std::size_t>(SlotClock(slot_minutes).slots_per_day()), 0) {}

void SlotOfDayHistogram::add(const SlotOfDayHistogram& other) {
    for (std::size_t i = 0; i < counts.size() && i < other.counts.size(); ++i) counts[i] += other.counts[i];
}

EventHistograms event_time_histogram(std::span<const WifiGap> gaps, const SlotClock& clock) {
    EventHistograms h{SlotOfDayHistogram(clock.slot_minutes()), SlotOfDayHistogram(clock.slot_minutes())};
    for (const auto& g : gaps) {
        ++h.cut.counts[static_cast<std::size_t>(clock.slot_of_day(g.cut_time))];
        if (g.resume_time) ++h.resume.counts[static_cast<std::size_t>(clock.slot_of_day(*g.resume_time))];
    }
    return h;
}

BoundBytes precache_bytes(const Trace& trace, std::span<const WifiGap> gaps, std::int64_t horizon_s) {
    BoundBytes b;
    const auto& s = trace.samples;
    for (const auto& x : s)
        if (x.active == Network::Cellular) b.cellular += x.total_bytes();
    if (horizon_s <= 0) return b;
    auto by_time = [](const MeasurementSample& m, Timestamp t) { return m.timestamp < t; };
    for (const auto& g : gaps) {
        const auto stop = std::min(g.cut_time + horizon_s, g.end_time);
        auto it = std::lower_bound(s.begin(), s.end(), g.cut_time, by_time);
        for (; it != s.end() && it->timestamp < stop; ++it)
            if (it->active == Network::Cellular) b.precacheable += it->total_bytes();
    }
    return b;
}

double precache_bound(const Trace& trace, std::span<const WifiGap> gaps, std::int64_t horizon_s) {
    const auto b = precache_bytes(trace, gaps, horizon_s);
    if (b.cellular == 0) return 0.0;
    return std::min(1.0, static_cast<double>(b.precacheable) / static_cast<double>(b.cellular));
}

}  // namespace pcach
