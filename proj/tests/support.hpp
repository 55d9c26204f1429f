#pragma once

#include <set>
#include <string>
#include <vector>

#include "pcach/connectivity.hpp"
#include "pcach/rng.hpp"
#include "pcach/trace.hpp"

namespace testsupport {

using namespace pcach;

inline MeasurementSample wifi(Timestamp t, const std::string& ssid, std::set<std::string> extra = {}) {
    MeasurementSample s;
    s.timestamp = t;
    s.active = Network::Wifi;
    s.connected_ssid = ssid;
    s.visible_ssids = std::move(extra);
    s.visible_ssids.insert(ssid);
    return s;
}

inline MeasurementSample cell(Timestamp t, std::set<std::string> visible = {}) {
    MeasurementSample s;
    s.timestamp = t;
    s.active = Network::Cellular;
    s.visible_ssids = std::move(visible);
    return s;
}

inline MeasurementSample none(Timestamp t) {
    MeasurementSample s;
    s.timestamp = t;
    s.active = Network::None;
    return s;
}

inline MeasurementSample with_app(MeasurementSample s, const std::string& app, std::uint64_t up, std::uint64_t down,
                                  bool running = true) {
    s.apps.push_back({app, up, down, running});
    return s;
}

inline Trace make_trace(std::vector<MeasurementSample> samples, std::string id = "p") {
    Trace t;
    t.phone_id = std::move(id);
    t.samples = std::move(samples);
    return t;
}

/// Random trace with mixed networks, irregular spacing (1 s to 20 min) and
/// a few apps moving data.
inline Trace random_trace(std::uint64_t seed, std::size_t n = 200, bool with_apps = true) {
    auto rng = Rng::stream(seed, "random-trace", "t", 0);
    Trace t;
    t.phone_id = "r" + std::to_string(seed);
    Timestamp ts = 1'000'000 + rng.uniform_int(0, 86400);
    const std::vector<std::string> ssids = {"a", "b", "c"};
    int state = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        if (u < 0.25) state = static_cast<int>(rng.uniform_int(0, 2));
        MeasurementSample s;
        s.timestamp = ts;
        if (state == 0) {
            s = wifi(ts, ssids[static_cast<std::size_t>(rng.uniform_int(0, 2))]);
        } else if (state == 1) {
            s = cell(ts);
            if (rng.bernoulli(0.3)) s.visible_ssids.insert("pub");
        } else {
            s = rng.bernoulli(0.7) ? cell(ts) : none(ts);
        }
        if (with_apps && s.active != Network::None)
            for (const char* app : {"x", "y", "z"})
                if (rng.bernoulli(0.4))
                    s = with_app(std::move(s), app, static_cast<std::uint64_t>(rng.uniform_int(0, 500)),
                                 static_cast<std::uint64_t>(rng.uniform_int(0, 5000)), rng.bernoulli(0.8));
        t.samples.push_back(std::move(s));
        const double r = rng.uniform();
        ts += r < 0.7 ? 300 : r < 0.8 ? rng.uniform_int(1, 600) : r < 0.95 ? rng.uniform_int(601, 1200)
                                                                             : rng.uniform_int(1200, 200000);
    }
    return t;
}

/// Quadratic scanner: for every sample index, test the cut clauses
/// directly, then walk forward to the first non-cellular sample.
inline std::vector<WifiGap> brute_force_gaps(const Trace& t) {
    const auto& s = t.samples;
    std::vector<WifiGap> out;
    std::size_t i = 1;
    while (i < s.size()) {
        const bool cut = s[i - 1].active == Network::Wifi && s[i].active == Network::Cellular &&
                         s[i].timestamp - s[i - 1].timestamp <= 600;
        if (!cut) {
            ++i;
            continue;
        }
        WifiGap g;
        g.cut_time = s[i].timestamp;
        std::size_t j = i + 1;
        while (j < s.size() && s[j].active == Network::Cellular) ++j;
        if (j == s.size()) {
            g.end_time = s.back().timestamp + 1;
        } else if (s[j].active == Network::Wifi) {
            g.resume_time = s[j].timestamp;
            g.end_time = s[j].timestamp;
            g.excluded = s[j].timestamp - g.cut_time >= 86400;
        } else {
            g.end_time = s[j].timestamp;
        }
        out.push_back(g);
        i = j + 1;
    }
    return out;
}

/// Cellular bytes in [cut, min(cut + h, end)) by exhaustive scan over
/// samples and gaps.
inline std::uint64_t brute_force_precacheable(const Trace& t, const std::vector<WifiGap>& gaps, std::int64_t h) {
    std::uint64_t total = 0;
    for (const auto& s : t.samples) {
        if (s.active != Network::Cellular) continue;
        for (const auto& g : gaps) {
            if (s.timestamp >= g.cut_time && s.timestamp < std::min(g.cut_time + h, g.end_time)) {
                total += s.total_bytes();
                break;
            }
        }
    }
    return total;
}

/// Scrambles every sample at or after `from`, keeping timestamps so a
/// chronological split lands in the same place.
inline Trace poison_after(const Trace& t, Timestamp from) {
    Trace p = t;
    Rng r(99);
    for (auto& s : p.samples) {
        if (s.timestamp < from) continue;
        const auto ts = s.timestamp;
        s = r.bernoulli(0.5) ? wifi(ts, "poison-" + std::to_string(r.uniform_int(0, 3))) : cell(ts, {"junk"});
        if (r.bernoulli(0.7)) s.apps.push_back({"Facebook", 5, 5, true});
    }
    return p;
}

}  // namespace testsupport
