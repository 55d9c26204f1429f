#include "pcach/synth_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "pcach/errors.hpp"
#include "pcach/slots.hpp"

namespace pcach {

namespace {

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Relative phone usage by local hour.
double usage_factor(int minute) {
    const int h = minute / 60;
    if (h < 6) return 0.15;
    if (h < 8) return 0.6;
    if (h < 22) return 1.0;
    return 0.5;
}

double surge_rate(const std::vector<Surge>& surges, double hour) {
    double r = 0;
    for (const auto& s : surges)
        if (hour >= s.start_hour && hour < s.end_hour) r += s.intensity;
    return r;
}

struct InstalledApp {
    std::size_t catalog_index;
    double appearance_share;  // share of appearances, before per-phone affinity
    double bytes_per_use;
    double peak_hour;
};

struct Persona {
    std::string home_ssid;
    std::string work_ssid;
    bool has_work = false;
    std::vector<std::string> home_neighbours;
    std::vector<std::string> work_neighbours;
    double volume = 1.0;
    std::vector<InstalledApp> apps;
};

Persona make_persona(const GeneratorConfig& c, const std::string& phone) {
    auto rng = Rng::stream(c.seed, phone, "persona", 0);
    Persona p;
    p.home_ssid = "home-" + phone;
    p.work_ssid = "work-" + phone;
    p.has_work = rng.bernoulli(c.work_network_probability);
    const auto nh = rng.uniform_int(0, 4);
    for (std::int64_t i = 0; i < nh; ++i) p.home_neighbours.push_back("nbr-" + phone + "-h" + std::to_string(i));
    const auto nw = rng.uniform_int(2, 8);
    for (std::int64_t i = 0; i < nw; ++i) p.work_neighbours.push_back("nbr-" + phone + "-w" + std::to_string(i));
    p.volume = rng.lognormal_with_mean(1.0, c.phone_volume_sigma);

    double appear_total = 0, traffic_total = 0;
    for (const auto& a : c.app_catalog) {
        appear_total += a.appearance_weight;
        traffic_total += a.traffic_weight;
    }
    for (std::size_t i = 0; i < c.app_catalog.size(); ++i) {
        const auto& a = c.app_catalog[i];
        // Draw every variate so the stream layout does not depend on outcomes.
        const bool installed = rng.bernoulli(c.app_install_probability);
        const double affinity = rng.lognormal_with_mean(1.0, c.app_affinity_sigma);
        const double peak = rng.uniform(0.0, 24.0);
        if (!installed || a.appearance_weight <= 0 || appear_total <= 0) continue;
        const double share = a.appearance_weight / appear_total;
        const double traffic_share = traffic_total > 0 ? a.traffic_weight / traffic_total : 0.0;
        const double bytes = c.mean_bytes_per_sample * traffic_share / (share * c.mean_apps_per_sample);
        p.apps.push_back({i, share * affinity, bytes, peak});
    }
    return p;
}

double app_probability(const GeneratorConfig& c, const InstalledApp& a, int minute) {
    const double hour = minute / 60.0;
    const double tod = 1.0 + c.time_of_day_amplitude * std::cos(2.0 * std::numbers::pi * (hour - a.peak_hour) / 24.0);
    return std::min(0.95, c.mean_apps_per_sample * usage_factor(minute) * a.appearance_share * tod);
}

struct Slotting {
    std::int64_t per_day;
    std::int64_t total;
};

}  // namespace

double GapLengthDistribution::cdf(double x) const {
    if (x <= 0) return 0.0;
    const double norm = std_normal_cdf((std::log(body_max_s) - body_log_mean) / body_log_sigma);
    const double body =
        x >= body_max_s ? 1.0 : std_normal_cdf((std::log(x) - body_log_mean) / body_log_sigma) / norm;
    const double tail = std::clamp((x - tail_min_s) / (tail_max_s - tail_min_s), 0.0, 1.0);
    return body_weight * body + (1.0 - body_weight) * tail;
}

double GapLengthDistribution::sample(Rng& rng) const {
    if (rng.bernoulli(body_weight)) {
        while (true) {
            const double x = std::exp(body_log_mean + body_log_sigma * rng.normal());
            if (x <= body_max_s) return x;
        }
    }
    return rng.uniform(tail_min_s, tail_max_s);
}

void validate(const GeneratorConfig& c) {
    if (c.period_s <= 0 || kSecondsPerDay % c.period_s != 0)
        throw ConfigurationError("period_s must be a positive divisor of 86400");
    if (c.days < 0) throw ConfigurationError("days must be non-negative");
    if (c.cellular_share_target < 0 || c.cellular_share_target > 1)
        throw ConfigurationError("cellular_share_target must lie in [0,1]");
    if (!(c.down_up_ratio > 0)) throw ConfigurationError("down_up_ratio must be positive");
    if (c.app_catalog.empty()) throw ConfigurationError("app_catalog is empty");
    bool any_positive = false;
    for (const auto& a : c.app_catalog) {
        if (a.app_id.empty()) throw ConfigurationError("app_catalog entry with empty app_id");
        if (a.traffic_weight < 0 || a.appearance_weight < 0)
            throw ConfigurationError("negative weight for app '" + a.app_id + "'");
        any_positive = any_positive || (a.traffic_weight > 0 && a.appearance_weight > 0);
    }
    if (!any_positive) throw ConfigurationError("app_catalog needs at least one positive weight");
    if (c.base_cut_rate_per_hour < 0) throw ConfigurationError("base_cut_rate_per_hour must be non-negative");
    for (const auto* surges : {&c.cut_surges, &c.resume_surges, &c.weekend_cut_surges})
        for (const auto& s : *surges)
            if (s.intensity < 0 || s.start_hour < 0 || s.end_hour > 24 || s.start_hour > s.end_hour)
                throw ConfigurationError("malformed surge window");
    const auto& g = c.gap_len_dist;
    if (g.body_weight < 0 || g.body_weight > 1 || g.body_log_sigma <= 0 || g.body_max_s <= 0 ||
        g.tail_min_s <= 0 || g.tail_max_s <= g.tail_min_s)
        throw ConfigurationError("malformed gap length distribution");
    if (c.mean_apps_per_sample <= 0 || c.mean_bytes_per_sample <= 0)
        throw ConfigurationError("mean_apps_per_sample and mean_bytes_per_sample must be positive");
    if (c.gap_activity_decay_s <= 0 || c.gap_activity_floor < 0 || c.gap_activity_floor > 1)
        throw ConfigurationError("malformed gap activity decay");
}

GeneratorConfig paper_profile_config() {
    GeneratorConfig c;
    c.seed = 0;
    c.days = 60;
    c.period_s = 300;
    c.cut_surges = {{6.0, 7.0, 0.55}, {15.0, 16.5, 0.35}};
    c.resume_surges = {{9.0, 10.0, 0.55}, {16.5, 17.5, 0.35}};
    c.weekend_cut_surges = {{10.0, 13.0, 0.3}, {14.0, 18.0, 0.25}};
    c.base_cut_rate_per_hour = 0.05;
    c.weekend_surge_scale = 0.25;
    c.gap_len_dist = GapLengthDistribution{};
    c.cellular_share_target = 0.15;
    c.down_up_ratio = 4.26;

    // Top-20 application table: (pcachable, % of traffic, % of appearance).
    c.app_catalog = {
        {"Other apps", false, 7.84, 35.073},
        {"Google + Phone services", false, 2.15, 31.882},
        {"WhatsApp", false, 1.69, 7.791},
        {"Internet browser", false, 9.21, 7.749},
        {"Facebook", true, 14.01, 6.148},
        {"E-mail", true, 0.76, 3.294},
        {"Maps", true, 1.28, 2.182},
        {"Instagram", true, 4.79, 1.994},
        {"News apps", true, 0.40, 1.478},
        {"YouTube", true, 2.80, 0.649},
        {"Downloads", false, 16.74, 0.356},
        {"Sports apps", true, 1.29, 0.295},
        {"Spotify", false, 0.75, 0.242},
        {"9GAG", true, 1.42, 0.200},
        {"Twitter", true, 0.41, 0.199},
        {"Snapchat", false, 2.06, 0.166},
        {"Netflix", false, 1.27, 0.132},
        {"Deezer", false, 1.16, 0.089},
        {"Twitch", true, 1.83, 0.065},
        {"TuneIn Radio", false, 0.40, 0.040},
        {"TRENDnetVIEW", false, 0.34, 0.002},
    };
    // Long tail of smaller pre-cachable apps (Zipf appearance), so that K can
    // range up to 30.
    for (int j = 1; j <= 25; ++j) {
        char id[16];
        std::snprintf(id, sizeof id, "pc-tail-%02d", j);
        const double appear = 2.62 / j;
        c.app_catalog.push_back({id, true, 0.5 * appear, appear});
    }

    c.mean_apps_per_sample = 8.0;
    c.mean_bytes_per_sample = 200000;
    c.bytes_sigma = 1.0;
    c.phone_volume_sigma = 0.8;
    c.app_affinity_sigma = 0.5;
    c.app_install_probability = 0.7;
    c.time_of_day_amplitude = 0.8;
    c.gap_activity_decay_s = 3600;
    c.gap_activity_floor = 0.12;

    c.work_network_probability = 0.85;
    c.wifi_off_episodes_per_day = 0.15;
    c.none_episodes_per_day = 0.1;
    c.missing_sample_rate = 0.01;
    c.outages_per_day = 0.02;
    return c;
}

// --- JSON ------------------------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

json surges_to_json(const std::vector<Surge>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back({{"start_hour", s.start_hour}, {"end_hour", s.end_hour}, {"intensity", s.intensity}});
    return a;
}

std::vector<Surge> surges_from_json(const json& a) {
    std::vector<Surge> v;
    for (const auto& s : a) v.push_back({s.at("start_hour").get<double>(), s.at("end_hour").get<double>(), s.at("intensity").get<double>()});
    return v;
}

template <class T>
void read_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string config_to_json(const GeneratorConfig& c) {
    json j;
    j["seed"] = c.seed;
    j["days"] = c.days;
    j["period_s"] = c.period_s;
    j["start_time"] = c.start_time;
    j["cut_surges"] = surges_to_json(c.cut_surges);
    j["resume_surges"] = surges_to_json(c.resume_surges);
    j["weekend_cut_surges"] = surges_to_json(c.weekend_cut_surges);
    j["base_cut_rate_per_hour"] = c.base_cut_rate_per_hour;
    j["weekend_surge_scale"] = c.weekend_surge_scale;
    const auto& g = c.gap_len_dist;
    j["gap_len_dist"] = {{"body_weight", g.body_weight},       {"body_log_mean", g.body_log_mean},
                         {"body_log_sigma", g.body_log_sigma}, {"body_max_s", g.body_max_s},
                         {"tail_min_s", g.tail_min_s},         {"tail_max_s", g.tail_max_s}};
    j["app_catalog"] = json::array();
    for (const auto& a : c.app_catalog)
        j["app_catalog"].push_back({{"app_id", a.app_id},
                                    {"pcachable", a.pcachable},
                                    {"traffic_weight", a.traffic_weight},
                                    {"appearance_weight", a.appearance_weight}});
    j["cellular_share_target"] = c.cellular_share_target;
    j["down_up_ratio"] = c.down_up_ratio;
    j["mean_apps_per_sample"] = c.mean_apps_per_sample;
    j["mean_bytes_per_sample"] = c.mean_bytes_per_sample;
    j["bytes_sigma"] = c.bytes_sigma;
    j["phone_volume_sigma"] = c.phone_volume_sigma;
    j["app_affinity_sigma"] = c.app_affinity_sigma;
    j["app_install_probability"] = c.app_install_probability;
    j["time_of_day_amplitude"] = c.time_of_day_amplitude;
    j["gap_activity_decay_s"] = c.gap_activity_decay_s;
    j["gap_activity_floor"] = c.gap_activity_floor;
    j["work_network_probability"] = c.work_network_probability;
    j["wifi_off_episodes_per_day"] = c.wifi_off_episodes_per_day;
    j["none_episodes_per_day"] = c.none_episodes_per_day;
    j["missing_sample_rate"] = c.missing_sample_rate;
    j["outages_per_day"] = c.outages_per_day;
    return j.dump(2);
}

GeneratorConfig config_from_json(const std::string& text) {
    GeneratorConfig c = paper_profile_config();
    json j;
    try {
        j = json::parse(text);
        read_if(j, "seed", c.seed);
        read_if(j, "days", c.days);
        read_if(j, "period_s", c.period_s);
        read_if(j, "start_time", c.start_time);
        if (j.contains("cut_surges")) c.cut_surges = surges_from_json(j.at("cut_surges"));
        if (j.contains("resume_surges")) c.resume_surges = surges_from_json(j.at("resume_surges"));
        if (j.contains("weekend_cut_surges")) c.weekend_cut_surges = surges_from_json(j.at("weekend_cut_surges"));
        read_if(j, "base_cut_rate_per_hour", c.base_cut_rate_per_hour);
        read_if(j, "weekend_surge_scale", c.weekend_surge_scale);
        if (j.contains("gap_len_dist")) {
            const auto& g = j.at("gap_len_dist");
            auto& d = c.gap_len_dist;
            read_if(g, "body_weight", d.body_weight);
            read_if(g, "body_log_mean", d.body_log_mean);
            read_if(g, "body_log_sigma", d.body_log_sigma);
            read_if(g, "body_max_s", d.body_max_s);
            read_if(g, "tail_min_s", d.tail_min_s);
            read_if(g, "tail_max_s", d.tail_max_s);
        }
        if (j.contains("app_catalog")) {
            c.app_catalog.clear();
            for (const auto& a : j.at("app_catalog"))
                c.app_catalog.push_back({a.at("app_id").get<std::string>(), a.value("pcachable", false),
                                         a.at("traffic_weight").get<double>(),
                                         a.at("appearance_weight").get<double>()});
        }
        read_if(j, "cellular_share_target", c.cellular_share_target);
        read_if(j, "down_up_ratio", c.down_up_ratio);
        read_if(j, "mean_apps_per_sample", c.mean_apps_per_sample);
        read_if(j, "mean_bytes_per_sample", c.mean_bytes_per_sample);
        read_if(j, "bytes_sigma", c.bytes_sigma);
        read_if(j, "phone_volume_sigma", c.phone_volume_sigma);
        read_if(j, "app_affinity_sigma", c.app_affinity_sigma);
        read_if(j, "app_install_probability", c.app_install_probability);
        read_if(j, "time_of_day_amplitude", c.time_of_day_amplitude);
        read_if(j, "gap_activity_decay_s", c.gap_activity_decay_s);
        read_if(j, "gap_activity_floor", c.gap_activity_floor);
        read_if(j, "work_network_probability", c.work_network_probability);
        read_if(j, "wifi_off_episodes_per_day", c.wifi_off_episodes_per_day);
        read_if(j, "none_episodes_per_day", c.none_episodes_per_day);
        read_if(j, "missing_sample_rate", c.missing_sample_rate);
        read_if(j, "outages_per_day", c.outages_per_day);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError(std::string("invalid generator config: ") + e.what());
    }
    validate(c);
    return c;
}

std::vector<std::string> pcachable_apps(const GeneratorConfig& config) {
    std::vector<std::string> out;
    for (const auto& a : config.app_catalog)
        if (a.pcachable) out.push_back(a.app_id);
    return out;
}

std::string phone_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "phone_%03zu", index);
    return buf;
}

// --- generation -------------------------------------------------------------

namespace {

enum class Kind : std::uint8_t { Home, Work, Gap, WifiOff, Off, Missing };

struct Schedule {
    std::vector<std::pair<std::int64_t, std::int64_t>> gaps;  // [cut index, resume index)
};

// Thinned non-homogeneous Poisson process of cut candidates, one day at a time.
Schedule schedule_gaps(const GeneratorConfig& c, const std::string& phone, std::int64_t per_day, std::int64_t total) {
    Schedule s;
    std::int64_t busy_until = 0;  // next cut index must exceed the previous resume index
    double weekday_peak = 0, weekend_peak = 0;
    for (const auto& v : c.cut_surges) weekday_peak += v.intensity;
    for (const auto& v : c.weekend_cut_surges) weekend_peak += v.intensity;
    const double peak = c.base_cut_rate_per_hour + weekday_peak + weekend_peak;
    if (peak <= 0) return s;
    for (int d = 0; d < c.days; ++d) {
        auto rng = Rng::stream(c.seed, phone, "schedule", static_cast<std::uint64_t>(d));
        const auto day_start = c.start_time + std::int64_t{d} * kSecondsPerDay;
        const bool weekday = is_weekday(day_start, 0);
        const double surge_scale = weekday ? 1.0 : c.weekend_surge_scale;
        double hour = 0;
        while (true) {
            hour += rng.exponential(peak);
            if (hour >= 24.0) break;
            const double rate = c.base_cut_rate_per_hour + surge_scale * surge_rate(c.cut_surges, hour) +
                                (weekday ? 0.0 : surge_rate(c.weekend_cut_surges, hour));
            const bool accept = rng.uniform() * peak < rate;
            const double duration = c.gap_len_dist.sample(rng);
            if (!accept) continue;
            const auto offset = static_cast<std::int64_t>(std::ceil(hour * 3600.0 / c.period_s));
            const auto cut = std::int64_t{d} * per_day + offset;
            if (cut < 1 || cut >= total || cut <= busy_until) continue;
            const auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(duration / c.period_s)));
            s.gaps.emplace_back(cut, cut + n);
            busy_until = cut + n;
        }
    }
    return s;
}

bool at_work(const Persona& p, Timestamp t) {
    if (!p.has_work || !is_weekday(t, 0)) return false;
    const int m = minute_of_day(t, 0);
    return m >= 8 * 60 && m < 17 * 60;
}

// Marks WiFi-off stretches, NONE stretches, outages and single missing
// samples. None of them may touch a gap or the samples bounding it.
void place_episodes(const GeneratorConfig& c, const std::string& phone, std::vector<Kind>& kind,
                    const std::vector<bool>& guarded, std::int64_t per_day, const Persona& persona) {
    const auto total = static_cast<std::int64_t>(kind.size());
    auto free_run = [&](std::int64_t from, std::int64_t len) {
        if (from < 0 || from + len > total) return false;
        for (std::int64_t k = from; k < from + len; ++k)
            if (guarded[static_cast<std::size_t>(k)] || kind[static_cast<std::size_t>(k)] != Kind::Home) return false;
        return true;
    };
    const auto per_hour = 3600 / c.period_s;
    for (int d = 0; d < c.days; ++d) {
        auto rng = Rng::stream(c.seed, phone, "episodes", static_cast<std::uint64_t>(d));
        const auto base = std::int64_t{d} * per_day;
        const double u_wifi = rng.uniform(), u_none = rng.uniform(), u_out = rng.uniform();
        const auto wifi_start = base + 19 * per_hour + rng.uniform_int(0, 3 * per_hour);
        const auto wifi_len = rng.uniform_int(1, 12);
        const auto none_start = base + 1 * per_hour + rng.uniform_int(0, 3 * per_hour);
        const auto none_len = rng.uniform_int(1, 6);
        const auto out_start = base + 0 * per_hour + rng.uniform_int(0, 2 * per_hour);
        const auto out_len = rng.uniform_int(2 * per_hour, 5 * per_hour);
        if (u_wifi < c.wifi_off_episodes_per_day && free_run(wifi_start, wifi_len))
            std::fill_n(kind.begin() + wifi_start, wifi_len, Kind::WifiOff);
        if (u_none < c.none_episodes_per_day && free_run(none_start, none_len))
            std::fill_n(kind.begin() + none_start, none_len, Kind::Off);
        if (u_out < c.outages_per_day && free_run(out_start, out_len))
            std::fill_n(kind.begin() + out_start, out_len, Kind::Missing);
        for (std::int64_t k = base; k < base + per_day && k < total; ++k) {
            const bool drop = rng.bernoulli(c.missing_sample_rate);
            if (drop && k > 0 && free_run(k, 1)) kind[static_cast<std::size_t>(k)] = Kind::Missing;
        }
    }
    (void)persona;
}

}  // namespace

GeneratedTrace generate_trace_with_schedule(const GeneratorConfig& c, const std::string& phone_id) {
    validate(c);
    if (c.days == 0) throw EmptyTraceError("generator asked for zero days");
    const std::int64_t per_day = kSecondsPerDay / c.period_s;
    const std::int64_t total = per_day * c.days;
    const auto persona = make_persona(c, phone_id);
    const auto schedule = schedule_gaps(c, phone_id, per_day, total);

    auto time_of = [&](std::int64_t k) { return c.start_time + k * c.period_s; };
    std::vector<Kind> kind(static_cast<std::size_t>(total));
    std::vector<bool> guarded(static_cast<std::size_t>(total), false);
    std::vector<std::int64_t> gap_start(static_cast<std::size_t>(total), -1);
    for (std::int64_t k = 0; k < total; ++k)
        kind[static_cast<std::size_t>(k)] = at_work(persona, time_of(k)) ? Kind::Work : Kind::Home;
    for (const auto& [cut, resume] : schedule.gaps) {
        for (auto k = cut - 1; k <= resume && k < total; ++k) guarded[static_cast<std::size_t>(k)] = true;
        for (auto k = cut; k < resume && k < total; ++k) {
            kind[static_cast<std::size_t>(k)] = Kind::Gap;
            gap_start[static_cast<std::size_t>(k)] = cut;
        }
    }
    // Work samples keep their label; episodes only replace home samples.
    place_episodes(c, phone_id, kind, guarded, per_day, persona);

    // Expected bytes per sample for the cellular rescaling.
    auto activity = [&](std::int64_t k) {
        const auto elapsed = static_cast<double>((k - gap_start[static_cast<std::size_t>(k)]) * c.period_s);
        return c.gap_activity_floor + (1.0 - c.gap_activity_floor) * std::exp(-elapsed / c.gap_activity_decay_s);
    };
    double wifi_mass = 0, cell_mass = 0;
    for (std::int64_t k = 0; k < total; ++k) {
        const auto kd = kind[static_cast<std::size_t>(k)];
        if (kd == Kind::Off || kd == Kind::Missing) continue;
        const int minute = minute_of_day(time_of(k), 0);
        double expected = 0;
        for (const auto& a : persona.apps) expected += app_probability(c, a, minute) * a.bytes_per_use;
        if (kd == Kind::Gap)
            cell_mass += expected * activity(k);
        else
            wifi_mass += expected;
    }
    const double share = c.cellular_share_target;
    const double cell_scale =
        (cell_mass > 0 && share < 1) ? share / (1.0 - share) * wifi_mass / cell_mass : 1.0;

    GeneratedTrace out;
    auto& trace = out.trace;
    trace.phone_id = phone_id;
    trace.nominal_period_s = c.period_s;
    trace.samples.reserve(static_cast<std::size_t>(total));
    const double up_share = 1.0 / (1.0 + c.down_up_ratio);
    for (int d = 0; d < c.days; ++d) {
        auto rng = Rng::stream(c.seed, phone_id, "samples", static_cast<std::uint64_t>(d));
        for (std::int64_t k = std::int64_t{d} * per_day; k < std::int64_t{d + 1} * per_day; ++k) {
            const auto kd = kind[static_cast<std::size_t>(k)];
            if (kd == Kind::Missing) continue;
            MeasurementSample s;
            s.timestamp = time_of(k);
            const int minute = minute_of_day(s.timestamp, 0);
            switch (kd) {
                case Kind::Home:
                case Kind::Work: {
                    const bool work = kd == Kind::Work;
                    s.active = Network::Wifi;
                    s.connected_ssid = work ? persona.work_ssid : persona.home_ssid;
                    s.visible_ssids.insert(*s.connected_ssid);
                    for (const auto& n : work ? persona.work_neighbours : persona.home_neighbours)
                        if (rng.bernoulli(0.6)) s.visible_ssids.insert(n);
                    break;
                }
                case Kind::WifiOff:
                    s.active = Network::Cellular;
                    s.visible_ssids.insert(persona.home_ssid);
                    for (const auto& n : persona.home_neighbours)
                        if (rng.bernoulli(0.6)) s.visible_ssids.insert(n);
                    break;
                case Kind::Gap: {
                    s.active = Network::Cellular;
                    const auto n = rng.uniform_int(0, 4);
                    for (std::int64_t i = 0; i < n; ++i) {
                        char id[16];
                        std::snprintf(id, sizeof id, "pub-%02d", static_cast<int>(rng.uniform_int(0, 39)));
                        s.visible_ssids.insert(id);
                    }
                    break;
                }
                case Kind::Off:
                case Kind::Missing:
                    s.active = Network::None;
                    break;
            }
            if (kd != Kind::Off) {
                const double scale = kd == Kind::Gap ? activity(k) * cell_scale : 1.0;
                for (const auto& a : persona.apps) {
                    if (!rng.bernoulli(app_probability(c, a, minute))) continue;
                    const double bytes = rng.lognormal_with_mean(a.bytes_per_use * persona.volume * scale, c.bytes_sigma);
                    const auto b = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(bytes)));
                    const auto up = static_cast<std::uint64_t>(std::llround(static_cast<double>(b) * up_share));
                    s.apps.push_back({c.app_catalog[a.catalog_index].app_id, up, b - up, true});
                }
            }
            trace.samples.push_back(std::move(s));
        }
    }

    const auto last = trace.samples.back().timestamp;
    for (const auto& [cut, resume] : schedule.gaps) {
        WifiGap g;
        g.cut_time = time_of(cut);
        if (resume < total) {
            g.resume_time = time_of(resume);
            g.end_time = *g.resume_time;
            g.excluded = *g.resume_time - g.cut_time >= kMaxAdmittedGapS;
        } else {
            g.end_time = last + 1;
        }
        out.gaps.push_back(g);
    }
    return out;
}

Trace generate_trace(const GeneratorConfig& config, const std::string& phone_id) {
    return generate_trace_with_schedule(config, phone_id).trace;
}

}  // namespace pcach
