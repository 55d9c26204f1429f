#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pcach/slots.hpp"
#include "pcach/trace.hpp"

namespace pcach {

inline constexpr std::int64_t kMaxCutSpacingS = 600;
inline constexpr std::int64_t kMaxAdmittedGapS = 86400;

struct PreferredNetworkProfile {
    std::set<std::string> preferred;
    std::vector<std::string> top3;  // most visible preferred first
    std::optional<std::string> home_ssid;
    std::optional<std::string> work_ssid;

    bool operator==(const PreferredNetworkProfile&) const = default;
};

/// Preferred = every SSID the phone connected to. Home is the preferred SSID
/// visible most often inside `night`, work the one visible most often
/// outside it. Ties go to the lexicographically smaller SSID. A trace
/// without WiFi connections yields an empty profile.
PreferredNetworkProfile derive_preferred_profile(const Trace& trace, HourWindow night = {});

/// Relabels CELL samples that see a preferred network as WIFI connected to
/// the smallest such SSID. Everything else is copied unchanged.
Trace normalize_timeline(const Trace& trace, const PreferredNetworkProfile& profile);

/// In-place variant used by the replay loop.
void normalize_sample(MeasurementSample& s, const PreferredNetworkProfile& profile);

struct WifiGap {
    Timestamp cut_time = 0;
    std::optional<Timestamp> resume_time;
    /// Exclusive end of the cellular stretch: the resume sample, the NONE
    /// sample that interrupted tracking, or one past the last sample.
    Timestamp end_time = 0;
    bool excluded = false;  // closed gap lasting a day or more

    bool closed() const { return resume_time.has_value(); }
    std::optional<std::int64_t> duration_s() const {
        if (!resume_time) return std::nullopt;
        return *resume_time - cut_time;
    }
    /// Closed and shorter than one day.
    bool admitted() const { return closed() && !excluded; }

    bool operator==(const WifiGap&) const = default;
};

/// Expects a normalized trace. A cut needs WIFI then CELL within 600 s; a
/// resume is CELL then WIFI. Each cut pairs with the next resume. A NONE
/// sample ends an open gap without a resume.
std::vector<WifiGap> detect_gaps(const Trace& trace);

/// True when sample `i` carries a cut event (needs i >= 1).
bool is_cut_event(const MeasurementSample& prev, const MeasurementSample& cur);
bool is_resume_event(const MeasurementSample& prev, const MeasurementSample& cur);

}  // namespace pcach
