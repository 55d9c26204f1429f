#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pcach {

using Timestamp = std::int64_t;  // seconds since epoch, UTC

enum class Network { Wifi, Cellular, None };

std::string_view to_string(Network n);
Network network_from_string(std::string_view s);  // "WIFI" | "CELL" | "NONE"

struct AppTrafficRecord {
    std::string app_id;
    std::uint64_t up_bytes = 0;
    std::uint64_t down_bytes = 0;
    bool running = false;

    std::uint64_t total_bytes() const { return up_bytes + down_bytes; }
    /// The app either showed up in the running list or moved data.
    bool ran() const { return running || total_bytes() > 0; }

    bool operator==(const AppTrafficRecord&) const = default;
};

struct MeasurementSample {
    Timestamp timestamp = 0;
    Network active = Network::None;
    std::optional<std::string> connected_ssid;
    std::set<std::string> visible_ssids;
    std::vector<AppTrafficRecord> apps;

    std::uint64_t total_bytes() const;

    bool operator==(const MeasurementSample&) const = default;
};

struct Trace {
    std::string phone_id;
    std::vector<MeasurementSample> samples;
    std::int64_t nominal_period_s = 300;
    /// Fixed offset from UTC to the phone's local time. Not part of the
    /// on-disk schemas; set by the caller.
    std::int64_t utc_offset_s = 0;

    bool empty() const { return samples.empty(); }

    bool operator==(const Trace&) const = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate_sample(const MeasurementSample& s);
void validate_trace(const Trace& t);

}  // namespace pcach
