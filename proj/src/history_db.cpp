#include "pcach/history_db.hpp"

#include <algorithm>

#include <json.hpp>

#include "pcach/errors.hpp"

namespace pcach {

HistoryDB::HistoryDB(int slot_minutes_, std::int64_t utc_offset, PreferredNetworkProfile p)
    : slot_minutes(slot_minutes_), utc_offset_s(utc_offset), profile(std::move(p)) {
    const auto n = static_cast<std::size_t>(SlotClock(slot_minutes, utc_offset).slots_per_day());
    cut_hist.assign(n, 0);
    resume_hist.assign(n, 0);
    slot_observations.assign(n, 0);
}

std::uint32_t HistoryDB::app_count(const std::string& app, int slot) const {
    auto it = app_hist.find(app);
    if (it == app_hist.end()) return 0;
    return it->second[static_cast<std::size_t>(slot)];
}

double HistoryDB::cut_probability(int slot) const {
    const auto obs = slot_observations[static_cast<std::size_t>(slot)];
    return obs == 0 ? 0.0 : static_cast<double>(cut_hist[static_cast<std::size_t>(slot)]) / obs;
}

double HistoryDB::resume_probability(int slot) const {
    const auto obs = slot_observations[static_cast<std::size_t>(slot)];
    return obs == 0 ? 0.0 : static_cast<double>(resume_hist[static_cast<std::size_t>(slot)]) / obs;
}

namespace {

void observe(HistoryDB& db, const SlotClock& clock, std::int64_t abs_slot) {
    if (db.last_observed_slot && abs_slot <= *db.last_observed_slot) return;
    ++db.slot_observations[static_cast<std::size_t>(clock.slot_of_day_abs(abs_slot))];
    db.last_observed_slot = abs_slot;
}

void count_event(std::vector<std::uint32_t>& hist, std::optional<std::int64_t>& last, const SlotClock& clock,
                 std::int64_t abs_slot) {
    if (last && *last == abs_slot) return;
    ++hist[static_cast<std::size_t>(clock.slot_of_day_abs(abs_slot))];
    last = abs_slot;
}

}  // namespace

void update_history(HistoryDB& db, std::span<const MeasurementSample> samples, std::int64_t current_slot,
                    std::span<const std::string> tracked_apps) {
    const auto clock = db.clock();
    auto prev_t = db.last_sample ? std::optional<Timestamp>(db.last_sample->timestamp) : std::nullopt;
    for (const auto& s : samples) {
        if (prev_t && s.timestamp <= *prev_t)
            throw OrderingError("sample at t=" + std::to_string(s.timestamp) + " does not follow t=" +
                                std::to_string(*prev_t));
        prev_t = s.timestamp;
    }
    if (samples.empty()) return;

    // Slots are observed in order; the slot just finished comes first so a
    // late batch never reorders them.
    std::vector<std::int64_t> observed;
    observed.push_back(current_slot - 1);
    for (const auto& s : samples) observed.push_back(clock.absolute_slot(s.timestamp));
    std::sort(observed.begin(), observed.end());
    for (auto slot : observed) observe(db, clock, slot);

    const int app_slot = clock.slot_of_day_abs(current_slot - 1);
    for (const auto& app : tracked_apps) {
        const bool ran = std::any_of(samples.begin(), samples.end(), [&](const MeasurementSample& s) {
            return std::any_of(s.apps.begin(), s.apps.end(),
                               [&](const AppTrafficRecord& r) { return r.app_id == app && r.ran(); });
        });
        if (!ran) continue;
        auto& h = db.app_hist[app];
        if (h.empty()) h.assign(static_cast<std::size_t>(clock.slots_per_day()), 0);
        ++h[static_cast<std::size_t>(app_slot)];
    }

    for (const auto& raw : samples) {
        MeasurementSample s = raw;
        normalize_sample(s, db.profile);
        if (db.last_sample) {
            const auto& prev = *db.last_sample;
            const auto slot = clock.absolute_slot(s.timestamp);
            if (db.gap_open) {
                if (s.active == Network::None) {
                    db.gap_open = false;
                } else if (is_resume_event(prev, s)) {
                    db.gap_open = false;
                    count_event(db.resume_hist, db.last_resume_slot, clock, slot);
                }
            } else if (is_cut_event(prev, s)) {
                db.gap_open = true;
                count_event(db.cut_hist, db.last_cut_slot, clock, slot);
            }
        }
        db.recent_samples.push_back(raw);
        while (db.recent_samples.size() > db.recent_capacity) db.recent_samples.pop_front();
        db.last_sample = std::move(s);
    }
}

// --- JSON snapshot ------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

json sample_json(const MeasurementSample& s) {
    json j;
    j["t"] = s.timestamp;
    j["active"] = std::string(to_string(s.active));
    j["ssid"] = s.connected_ssid ? json(*s.connected_ssid) : json(nullptr);
    j["visible"] = s.visible_ssids;
    j["apps"] = json::array();
    for (const auto& a : s.apps)
        j["apps"].push_back({{"id", a.app_id}, {"up", a.up_bytes}, {"down", a.down_bytes}, {"running", a.running}});
    return j;
}

MeasurementSample sample_from(const json& j) {
    MeasurementSample s;
    s.timestamp = j.at("t").get<std::int64_t>();
    s.active = network_from_string(j.at("active").get<std::string>());
    if (j.at("ssid").is_string()) s.connected_ssid = j.at("ssid").get<std::string>();
    for (const auto& v : j.at("visible")) s.visible_ssids.insert(v.get<std::string>());
    for (const auto& a : j.at("apps"))
        s.apps.push_back({a.at("id").get<std::string>(), a.at("up").get<std::uint64_t>(),
                          a.at("down").get<std::uint64_t>(), a.at("running").get<bool>()});
    return s;
}

template <class T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace

std::string history_to_json(const HistoryDB& db) {
    json j;
    j["slot_minutes"] = db.slot_minutes;
    j["utc_offset_s"] = db.utc_offset_s;
    j["app_hist"] = json::object();
    for (const auto& [app, h] : db.app_hist) j["app_hist"][app] = h;
    j["cut_hist"] = db.cut_hist;
    j["resume_hist"] = db.resume_hist;
    j["slot_observations"] = db.slot_observations;
    j["profile"] = {{"preferred", db.profile.preferred},
                    {"top3", db.profile.top3},
                    {"home_ssid", opt(db.profile.home_ssid)},
                    {"work_ssid", opt(db.profile.work_ssid)}};
    j["recent_capacity"] = db.recent_capacity;
    j["recent_samples"] = json::array();
    for (const auto& s : db.recent_samples) j["recent_samples"].push_back(sample_json(s));
    j["last_sample"] = db.last_sample ? sample_json(*db.last_sample) : json(nullptr);
    j["gap_open"] = db.gap_open;
    j["last_observed_slot"] = opt(db.last_observed_slot);
    j["last_cut_slot"] = opt(db.last_cut_slot);
    j["last_resume_slot"] = opt(db.last_resume_slot);
    return j.dump();
}

HistoryDB history_from_json(const std::string& text) {
    try {
        const auto j = json::parse(text);
        HistoryDB db(j.at("slot_minutes").get<int>(), j.at("utc_offset_s").get<std::int64_t>());
        for (const auto& [app, h] : j.at("app_hist").items()) db.app_hist[app] = h.get<std::vector<std::uint32_t>>();
        db.cut_hist = j.at("cut_hist").get<std::vector<std::uint32_t>>();
        db.resume_hist = j.at("resume_hist").get<std::vector<std::uint32_t>>();
        db.slot_observations = j.at("slot_observations").get<std::vector<std::uint32_t>>();
        const auto& p = j.at("profile");
        for (const auto& v : p.at("preferred")) db.profile.preferred.insert(v.get<std::string>());
        db.profile.top3 = p.at("top3").get<std::vector<std::string>>();
        db.profile.home_ssid = opt_from<std::string>(p.at("home_ssid"));
        db.profile.work_ssid = opt_from<std::string>(p.at("work_ssid"));
        db.recent_capacity = j.at("recent_capacity").get<std::size_t>();
        for (const auto& s : j.at("recent_samples")) db.recent_samples.push_back(sample_from(s));
        if (!j.at("last_sample").is_null()) db.last_sample = sample_from(j.at("last_sample"));
        db.gap_open = j.at("gap_open").get<bool>();
        db.last_observed_slot = opt_from<std::int64_t>(j.at("last_observed_slot"));
        db.last_cut_slot = opt_from<std::int64_t>(j.at("last_cut_slot"));
        db.last_resume_slot = opt_from<std::int64_t>(j.at("last_resume_slot"));
        const auto n = static_cast<std::size_t>(db.slots_per_day());
        if (db.cut_hist.size() != n || db.resume_hist.size() != n || db.slot_observations.size() != n)
            throw ValidationError("histogram length does not match slot_minutes");
        return db;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid history snapshot: ") + e.what());
    }
}

}  // namespace pcach
