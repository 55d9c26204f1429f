#include "pcach/connectivity.hpp"

#include <algorithm>
#include <map>

namespace pcach {

namespace {

// Highest count wins; std::map iteration order resolves ties lexicographically.
std::optional<std::string> most_seen(const std::map<std::string, std::size_t>& counts) {
    std::optional<std::string> best;
    std::size_t best_count = 0;
    for (const auto& [ssid, n] : counts) {
        if (n > best_count) {
            best = ssid;
            best_count = n;
        }
    }
    return best;
}

}  // namespace

PreferredNetworkProfile derive_preferred_profile(const Trace& trace, HourWindow night) {
    PreferredNetworkProfile p;
    for (const auto& s : trace.samples)
        if (s.connected_ssid) p.preferred.insert(*s.connected_ssid);
    if (p.preferred.empty()) return p;

    std::map<std::string, std::size_t> seen, seen_night, seen_day;
    for (const auto& s : trace.samples) {
        const bool is_night = night.contains_minute(minute_of_day(s.timestamp, trace.utc_offset_s));
        for (const auto& v : s.visible_ssids) {
            if (!p.preferred.contains(v)) continue;
            ++seen[v];
            ++(is_night ? seen_night : seen_day)[v];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(seen.begin(), seen.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i) p.top3.push_back(ranked[i].first);
    p.home_ssid = most_seen(seen_night);
    p.work_ssid = most_seen(seen_day);
    return p;
}

void normalize_sample(MeasurementSample& s, const PreferredNetworkProfile& profile) {
    if (s.active != Network::Cellular) return;
    for (const auto& v : s.visible_ssids) {
        if (profile.preferred.contains(v)) {
            s.active = Network::Wifi;
            s.connected_ssid = v;
            return;
        }
    }
}

Trace normalize_timeline(const Trace& trace, const PreferredNetworkProfile& profile) {
    Trace out = trace;
    for (auto& s : out.samples) normalize_sample(s, profile);
    return out;
}

bool is_cut_event(const MeasurementSample& prev, const MeasurementSample& cur) {
    return prev.active == Network::Wifi && cur.active == Network::Cellular &&
           cur.timestamp - prev.timestamp <= kMaxCutSpacingS;
}

bool is_resume_event(const MeasurementSample& prev, const MeasurementSample& cur) {
    return prev.active == Network::Cellular && cur.active == Network::Wifi;
}

std::vector<WifiGap> detect_gaps(const Trace& trace) {
    std::vector<WifiGap> gaps;
    const auto& s = trace.samples;
    std::optional<WifiGap> open;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (open) {
            if (s[i].active == Network::None) {
                open->end_time = s[i].timestamp;
                gaps.push_back(*open);
                open.reset();
            } else if (is_resume_event(s[i - 1], s[i])) {
                open->resume_time = s[i].timestamp;
                open->end_time = s[i].timestamp;
                open->excluded = *open->resume_time - open->cut_time >= kMaxAdmittedGapS;
                gaps.push_back(*open);
                open.reset();
            }
        } else if (is_cut_event(s[i - 1], s[i])) {
            open = WifiGap{s[i].timestamp, std::nullopt, 0, false};
        }
    }
    if (open) {
        open->end_time = s.back().timestamp + 1;
        gaps.push_back(*open);
    }
    return gaps;
}

}  // namespace pcach
