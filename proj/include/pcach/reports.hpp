#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pcach/backtest.hpp"
#include "pcach/mining.hpp"

namespace pcach {

inline constexpr const char* kArtifactVersion = "pcach 1.0.0";

/// A named series, written as CSV or as a JSON array of row objects.
struct Table {
    using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class ReportFormat { Json, Csv };
ReportFormat report_format_from_string(const std::string& s);  // "json" | "csv"
std::string file_extension(ReportFormat f);                    // ".json" | ".csv"

void write_table(std::ostream& out, const Table& table, ReportFormat format);
void write_table_csv(std::ostream& out, const Table& table);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

struct PhoneMining {
    std::string phone_id;
    TrafficSplit split;
    std::vector<WifiGap> gaps;
    EventHistograms events;
    std::vector<int> horizons_minutes;
    std::vector<BoundBytes> bound;  // one per horizon
};

/// Normalizes with the phone's own preferred profile, then runs every
/// mining step on the result.
PhoneMining mine_phone(const Trace& trace, const SlotClock& clock, std::span<const int> horizons_minutes);

/// Series behind the mining figures. Corpus rows pool bytes or gaps across
/// phones and carry phone_id "ALL".
Table traffic_split_table(std::span<const PhoneMining> phones);
Table gap_cdf_table(std::span<const PhoneMining> phones);
Table event_histogram_table(std::span<const PhoneMining> phones, int slot_minutes);
Table bound_table(std::span<const PhoneMining> phones);

struct MiningSummary {
    std::size_t phones = 0;
    double cellular_share = 0;
    std::size_t gaps = 0;
    std::size_t admitted_gaps = 0;
    std::size_t open_gaps = 0;
    std::size_t excluded_gaps = 0;
    double cdf_30_min = 0;
    double cdf_90_min = 0;
    double cdf_240_min = 0;
    std::vector<std::pair<int, double>> bound;  // horizon minutes, pooled bound
};

MiningSummary summarize_mining(std::span<const PhoneMining> phones);
std::string mining_summary_json(const MiningSummary& summary);

std::string evaluation_summary_json(const CorpusSummary& summary, std::span<const PhoneReport> reports);
Table roc_table(std::span<const CorpusSummary> summaries);
Table k_sweep_table(std::span<const KSweepRow> rows);

struct RunManifest {
    std::string command;
    std::string parameters;  // JSON object text
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string version = kArtifactVersion;
};

std::string manifest_json(const RunManifest& manifest);

/// Writes `text` to `path`, throwing DataError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pcach
