#include "pcach/trace.hpp"

#include <unordered_set>

#include "pcach/errors.hpp"

namespace pcach {

std::string_view to_string(Network n) {
    switch (n) {
        case Network::Wifi: return "WIFI";
        case Network::Cellular: return "CELL";
        case Network::None: return "NONE";
    }
    return "NONE";
}

Network network_from_string(std::string_view s) {
    if (s == "WIFI") return Network::Wifi;
    if (s == "CELL") return Network::Cellular;
    if (s == "NONE") return Network::None;
    throw ValidationError("unknown active network '" + std::string(s) + "'");
}

std::uint64_t MeasurementSample::total_bytes() const {
    std::uint64_t sum = 0;
    for (const auto& a : apps) sum += a.total_bytes();
    return sum;
}

void validate_sample(const MeasurementSample& s) {
    const auto at = " (t=" + std::to_string(s.timestamp) + ")";
    if (s.active == Network::Wifi && !s.connected_ssid)
        throw ValidationError("WIFI sample without connected ssid" + at);
    if (s.active != Network::Wifi && s.connected_ssid)
        throw ValidationError("connected ssid on a non-WIFI sample" + at);
    if (s.connected_ssid && !s.visible_ssids.contains(*s.connected_ssid))
        throw ValidationError("connected ssid missing from visible list" + at);
    std::unordered_set<std::string_view> seen;
    for (const auto& a : s.apps) {
        if (a.app_id.empty()) throw ValidationError("empty app id" + at);
        if (!seen.insert(a.app_id).second)
            throw ValidationError("duplicate app id '" + a.app_id + "'" + at);
    }
}

void validate_trace(const Trace& t) {
    if (t.nominal_period_s <= 0) throw ValidationError("nominal period must be positive");
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
        validate_sample(t.samples[i]);
        if (i > 0 && t.samples[i].timestamp <= t.samples[i - 1].timestamp)
            throw ValidationError("timestamps not strictly increasing at sample " + std::to_string(i));
    }
}

}  // namespace pcach
