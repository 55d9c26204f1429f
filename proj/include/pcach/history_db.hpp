#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pcach/connectivity.hpp"
#include "pcach/slots.hpp"
#include "pcach/trace.hpp"

namespace pcach {

/// Per-phone rolling store of slot-of-day histograms. Single owner; updates
/// must arrive in time order.
struct HistoryDB {
    int slot_minutes = 15;
    std::int64_t utc_offset_s = 0;
    std::map<std::string, std::vector<std::uint32_t>> app_hist;
    std::vector<std::uint32_t> cut_hist;
    std::vector<std::uint32_t> resume_hist;
    std::vector<std::uint32_t> slot_observations;
    PreferredNetworkProfile profile;
    std::deque<MeasurementSample> recent_samples;
    std::size_t recent_capacity = 12;

    // Replay state carried between calls.
    std::optional<MeasurementSample> last_sample;  // normalized
    bool gap_open = false;
    std::optional<std::int64_t> last_observed_slot;
    std::optional<std::int64_t> last_cut_slot;
    std::optional<std::int64_t> last_resume_slot;

    HistoryDB() : HistoryDB(15) {}
    explicit HistoryDB(int slot_minutes, std::int64_t utc_offset_s = 0, PreferredNetworkProfile profile = {});

    SlotClock clock() const { return SlotClock(slot_minutes, utc_offset_s); }
    int slots_per_day() const { return clock().slots_per_day(); }

    std::uint32_t app_count(const std::string& app, int slot_of_day) const;
    /// Fraction of observed slots with a cut (resume) event; 0 if never observed.
    double cut_probability(int slot_of_day) const;
    double resume_probability(int slot_of_day) const;

    bool operator==(const HistoryDB&) const = default;
};

/// Folds the samples gathered since the previous call into the histograms.
/// PCachable apps (`tracked_apps`) that ran bump app_hist[app][cSlt - 1].
/// Cut and resume events, found on the profile-normalized timeline with the
/// same pairing rules as detect_gaps, bump their slot of day once per
/// absolute slot. Throws OrderingError if the samples go back in time.
void update_history(HistoryDB& db, std::span<const MeasurementSample> samples, std::int64_t current_slot,
                    std::span<const std::string> tracked_apps);

std::string history_to_json(const HistoryDB& db);
HistoryDB history_from_json(const std::string& text);

}  // namespace pcach
