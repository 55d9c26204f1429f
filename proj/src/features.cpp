#include "pcach/features.hpp"

#include "pcach/errors.hpp"

namespace pcach {

double FeatureVector::operator[](int feature) const {
    switch (feature) {
        case 1: return home_wifi_night ? 1.0 : 0.0;
        case 2: return work_wifi_day ? 1.0 : 0.0;
        case 3: return is_weekday ? 1.0 : 0.0;
        case 4: return n_visible_wifi;
        case 5: return top1_seen ? 1.0 : 0.0;
        case 6: return top2_seen ? 1.0 : 0.0;
        case 7: return top3_seen ? 1.0 : 0.0;
        case 8: return slot_index;
        case 9: return slot_event_prob;
        default: throw ParameterError("feature index must lie in 1..9");
    }
}

std::array<double, kFeatureCount> FeatureVector::values() const {
    std::array<double, kFeatureCount> v{};
    for (int i = 0; i < kFeatureCount; ++i) v[static_cast<std::size_t>(i)] = (*this)[i + 1];
    return v;
}

FeatureVector extract_features(const HistoryDB& db, std::int64_t slot, Timestamp now, EventTarget target) {
    if (db.recent_samples.empty()) throw FeatureExtractionError("no recent samples to extract features from");
    const auto& visible = db.recent_samples.back().visible_ssids;
    const auto& prof = db.profile;
    auto seen = [&](const std::optional<std::string>& ssid) { return ssid && visible.contains(*ssid); };
    auto top = [&](std::size_t i) { return i < prof.top3.size() && visible.contains(prof.top3[i]); };

    const int minute = minute_of_day(now, db.utc_offset_s);
    const bool night = HourWindow{20, 8}.contains_minute(minute);
    const auto clock = db.clock();

    FeatureVector f;
    f.home_wifi_night = night && seen(prof.home_ssid);
    f.work_wifi_day = !night && seen(prof.work_ssid);
    f.is_weekday = is_weekday(now, db.utc_offset_s);
    f.n_visible_wifi = static_cast<int>(visible.size());
    f.top1_seen = top(0);
    f.top2_seen = top(1);
    f.top3_seen = top(2);
    f.slot_index = clock.slot_of_day_abs(slot);
    f.slot_event_prob =
        target == EventTarget::Cut ? db.cut_probability(f.slot_index) : db.resume_probability(f.slot_index);
    return f;
}

}  // namespace pcach
