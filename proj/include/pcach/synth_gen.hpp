#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcach/connectivity.hpp"
#include "pcach/rng.hpp"
#include "pcach/trace.hpp"

namespace pcach {

/// Extra cut (or resume) rate, in events per hour, over [start_hour, end_hour).
struct Surge {
    double start_hour = 0;
    double end_hour = 0;
    double intensity = 0;

    bool operator==(const Surge&) const = default;
};

/// Gap durations: a log-normal body truncated at body_max_s, mixed with a
/// uniform tail over [tail_min_s, tail_max_s].
struct GapLengthDistribution {
    double body_weight = 0.93106564;
    double body_log_mean = 6.64188497;  // ln(seconds)
    double body_log_sigma = 2.59606727;
    double body_max_s = 6 * 3600;
    double tail_min_s = 4 * 3600;
    double tail_max_s = 12 * 3600;

    double cdf(double seconds) const;
    double sample(Rng& rng) const;

    bool operator==(const GapLengthDistribution&) const = default;
};

struct AppSpec {
    std::string app_id;
    bool pcachable = false;
    double traffic_weight = 0;     // percent of total traffic
    double appearance_weight = 0;  // percent of app appearances

    bool operator==(const AppSpec&) const = default;
};

struct GeneratorConfig {
    std::uint64_t seed = 0;
    int days = 60;
    int period_s = 300;
    std::int64_t start_time = 1430697600;  // Monday 2015-05-04 00:00 UTC

    std::vector<Surge> cut_surges;
    std::vector<Surge> resume_surges;
    /// Extra cut surges on Saturdays and Sundays only (outings).
    std::vector<Surge> weekend_cut_surges;
    double base_cut_rate_per_hour = 0;
    double weekend_surge_scale = 0;
    GapLengthDistribution gap_len_dist;

    std::vector<AppSpec> app_catalog;
    double cellular_share_target = 0.15;
    double down_up_ratio = 4.26;
    double mean_apps_per_sample = 1.0;
    double mean_bytes_per_sample = 100000;
    double bytes_sigma = 1.0;
    double phone_volume_sigma = 0.8;
    double app_affinity_sigma = 1.0;
    double app_install_probability = 1.0;
    double time_of_day_amplitude = 0.0;
    /// Traffic inside a gap scales by floor + (1 - floor) * exp(-elapsed / decay).
    double gap_activity_decay_s = 3600;
    double gap_activity_floor = 1.0;

    double work_network_probability = 1.0;
    double wifi_off_episodes_per_day = 0;
    double none_episodes_per_day = 0;
    double missing_sample_rate = 0;
    double outages_per_day = 0;

    bool operator==(const GeneratorConfig&) const = default;
};

/// Throws ConfigurationError on negative weights, an all-zero catalog, a
/// share outside [0,1], a non-positive ratio, or a period that does not
/// divide the day.
void validate(const GeneratorConfig& config);

/// Calibration targets taken from the published aggregates: gap CDF
/// 0.65 / 0.80 / 0.90 at 30 / 90 / 240 min, commute surges, 15 % cellular
/// share, 4.26 download/upload ratio, and the top-20 application table
/// extended with a long tail of pre-cachable apps.
GeneratorConfig paper_profile_config();

std::string config_to_json(const GeneratorConfig& config);
/// Fields absent from the document keep their default-profile values.
GeneratorConfig config_from_json(const std::string& text);

struct GeneratedTrace {
    Trace trace;
    /// Gaps the generator scheduled, in the form detect_gaps reports them
    /// once the trace is normalized with its own preferred profile.
    std::vector<WifiGap> gaps;
};

/// Deterministic in (config, phone_id). Throws EmptyTraceError for days = 0.
GeneratedTrace generate_trace_with_schedule(const GeneratorConfig& config, const std::string& phone_id);
Trace generate_trace(const GeneratorConfig& config, const std::string& phone_id);

std::vector<std::string> pcachable_apps(const GeneratorConfig& config);

/// Phone ids used by the CLI and the acceptance corpus: phone_000, ...
std::string phone_name(std::size_t index);

}  // namespace pcach
