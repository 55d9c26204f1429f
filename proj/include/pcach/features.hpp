#pragma once

#include <array>
#include <cstdint>

#include "pcach/history_db.hpp"

namespace pcach {

inline constexpr int kFeatureCount = 9;

enum class EventTarget { Cut, Resume };

/// Per-slot context used by the gap classifiers.
struct FeatureVector {
    bool home_wifi_night = false;  // 1: home network seen, 20:00-08:00
    bool work_wifi_day = false;    // 2: work network seen, 08:00-20:00
    bool is_weekday = false;       // 3
    int n_visible_wifi = 0;        // 4
    bool top1_seen = false;        // 5
    bool top2_seen = false;        // 6
    bool top3_seen = false;        // 7
    int slot_index = 0;            // 8: slot of day being predicted
    double slot_event_prob = 0;    // 9: cut or resume rate of that slot

    /// Feature by 1-based index, booleans as 0/1.
    double operator[](int feature) const;
    std::array<double, kFeatureCount> values() const;

    bool operator==(const FeatureVector&) const = default;
};

/// Features for predicting `target` in absolute slot `slot`, observed at
/// `now`. Network features read the latest sample in the recent window.
/// Throws FeatureExtractionError if that window is empty.
FeatureVector extract_features(const HistoryDB& db, std::int64_t slot, Timestamp now, EventTarget target);

}  // namespace pcach
