#include "pcach/reports.hpp"

#include <charconv>
#include <fstream>
#include <map>

#include <json.hpp>

#include "pcach/errors.hpp"

namespace pcach {

using ojson = nlohmann::ordered_json;

ReportFormat report_format_from_string(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    throw ParameterError("unknown report format '" + s + "' (expected json or csv)");
}

std::string file_extension(ReportFormat f) { return f == ReportFormat::Json ? ".json" : ".csv"; }

std::string format_double(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw DataError("cannot format number");
    return {buf, end};
}

namespace {

std::string csv_cell(const Table::Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
                std::string q = "\"";
                for (char ch : v) {
                    if (ch == '"') q += '"';
                    q += ch;
                }
                return q + "\"";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else {
                return std::to_string(v);
            }
        },
        c);
}

ojson json_cell(const Table::Cell& c) {
    return std::visit([](const auto& v) { return ojson(v); }, c);
}

ojson point_json(const RocPoint& p) { return ojson{{"tpr", p.tpr}, {"fpr", p.fpr}}; }

ojson counts_json(const ConfusionCounts& c) {
    return ojson{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
}

}  // namespace

void write_table_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
}

void write_table(std::ostream& out, const Table& table, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        write_table_csv(out, table);
        return;
    }
    auto arr = ojson::array();
    for (const auto& row : table.rows) {
        ojson o = ojson::object();
        for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) o[table.columns[i]] = json_cell(row[i]);
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

PhoneMining mine_phone(const Trace& trace, const SlotClock& clock, std::span<const int> horizons_minutes) {
    PhoneMining m;
    m.phone_id = trace.phone_id;
    const auto normalized = normalize_timeline(trace, derive_preferred_profile(trace));
    m.split = traffic_split(normalized);
    m.gaps = detect_gaps(normalized);
    m.events = event_time_histogram(m.gaps, clock);
    for (int h : horizons_minutes) {
        if (h < 0) throw ParameterError("horizon must be non-negative");
        m.horizons_minutes.push_back(h);
        m.bound.push_back(precache_bytes(normalized, m.gaps, std::int64_t{h} * 60));
    }
    return m;
}

Table traffic_split_table(std::span<const PhoneMining> phones) {
    Table t{{"phone_id", "cellular_bytes", "wifi_bytes", "cellular_fraction"}, {}};
    TrafficSplit all;
    for (const auto& p : phones) {
        t.rows.push_back({p.phone_id, p.split.cellular_bytes, p.split.wifi_bytes, p.split.cellular_fraction()});
        all.cellular_bytes += p.split.cellular_bytes;
        all.wifi_bytes += p.split.wifi_bytes;
    }
    t.rows.push_back({std::string("ALL"), all.cellular_bytes, all.wifi_bytes, all.cellular_fraction()});
    return t;
}

namespace {

std::vector<CdfPoint> pooled_cdf(std::span<const PhoneMining> phones) {
    std::vector<WifiGap> gaps;
    for (const auto& p : phones) gaps.insert(gaps.end(), p.gaps.begin(), p.gaps.end());
    return gap_duration_cdf(gaps);
}

}  // namespace

Table gap_cdf_table(std::span<const PhoneMining> phones) {
    Table t{{"duration_minutes", "fraction"}, {}};
    for (const auto& p : pooled_cdf(phones)) t.rows.push_back({p.value / 60.0, p.fraction});
    return t;
}

Table event_histogram_table(std::span<const PhoneMining> phones, int slot_minutes) {
    SlotOfDayHistogram cut(slot_minutes), resume(slot_minutes);
    for (const auto& p : phones) {
        cut.add(p.events.cut);
        resume.add(p.events.resume);
    }
    Table t{{"slot", "minute_of_day", "cuts", "resumes"}, {}};
    for (std::size_t i = 0; i < cut.counts.size(); ++i)
        t.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(i) * slot_minutes, cut.counts[i],
                          resume.counts[i]});
    return t;
}

Table bound_table(std::span<const PhoneMining> phones) {
    Table t{{"phone_id", "horizon_minutes", "precacheable_bytes", "cellular_bytes", "bound"}, {}};
    auto fraction = [](const BoundBytes& b) {
        return b.cellular == 0 ? 0.0 : static_cast<double>(b.precacheable) / static_cast<double>(b.cellular);
    };
    std::map<int, BoundBytes> pooled;
    std::vector<int> order;
    for (const auto& p : phones)
        for (std::size_t i = 0; i < p.bound.size(); ++i) {
            const auto h = p.horizons_minutes[i];
            const auto& b = p.bound[i];
            t.rows.push_back({p.phone_id, std::int64_t{h}, b.precacheable, b.cellular, fraction(b)});
            if (!pooled.contains(h)) order.push_back(h);
            pooled[h].precacheable += b.precacheable;
            pooled[h].cellular += b.cellular;
        }
    for (int h : order) {
        const auto& b = pooled[h];
        t.rows.push_back({std::string("ALL"), std::int64_t{h}, b.precacheable, b.cellular, fraction(b)});
    }
    return t;
}

MiningSummary summarize_mining(std::span<const PhoneMining> phones) {
    MiningSummary s;
    s.phones = phones.size();
    TrafficSplit all;
    std::map<int, BoundBytes> pooled;
    std::vector<int> order;
    for (const auto& p : phones) {
        all.cellular_bytes += p.split.cellular_bytes;
        all.wifi_bytes += p.split.wifi_bytes;
        for (const auto& g : p.gaps) {
            ++s.gaps;
            if (g.admitted()) ++s.admitted_gaps;
            if (!g.closed()) ++s.open_gaps;
            if (g.excluded) ++s.excluded_gaps;
        }
        for (std::size_t i = 0; i < p.bound.size(); ++i) {
            const auto h = p.horizons_minutes[i];
            if (!pooled.contains(h)) order.push_back(h);
            pooled[h].precacheable += p.bound[i].precacheable;
            pooled[h].cellular += p.bound[i].cellular;
        }
    }
    s.cellular_share = all.cellular_fraction();
    const auto cdf = pooled_cdf(phones);
    s.cdf_30_min = cdf_at(cdf, 30 * 60);
    s.cdf_90_min = cdf_at(cdf, 90 * 60);
    s.cdf_240_min = cdf_at(cdf, 240 * 60);
    for (int h : order) {
        const auto& b = pooled[h];
        s.bound.emplace_back(h, b.cellular == 0 ? 0.0
                                                : static_cast<double>(b.precacheable) / static_cast<double>(b.cellular));
    }
    return s;
}

std::string mining_summary_json(const MiningSummary& s) {
    ojson j;
    j["phones"] = s.phones;
    j["cellular_share"] = s.cellular_share;
    j["gaps"] = s.gaps;
    j["admitted_gaps"] = s.admitted_gaps;
    j["open_gaps"] = s.open_gaps;
    j["excluded_gaps"] = s.excluded_gaps;
    j["gap_cdf_30_min"] = s.cdf_30_min;
    j["gap_cdf_90_min"] = s.cdf_90_min;
    j["gap_cdf_240_min"] = s.cdf_240_min;
    auto b = ojson::object();
    for (const auto& [h, v] : s.bound) b[std::to_string(h)] = v;
    j["bound_by_horizon_minutes"] = b;
    return j.dump(2) + "\n";
}

std::string evaluation_summary_json(const CorpusSummary& s, std::span<const PhoneReport> reports) {
    ojson j;
    j["predictor"] = to_string(s.predictor);
    j["phones"] = s.phones;
    j["cut"] = point_json(s.cut);
    j["cut_quality_gap"] = quality_gap(s.cut.tpr, s.cut.fpr);
    j["resume"] = point_json(s.resume);
    j["resume_quality_gap"] = quality_gap(s.resume.tpr, s.resume.fpr);
    j["phones_skipped_cut"] = s.phones_skipped_cut;
    j["phones_skipped_resume"] = s.phones_skipped_resume;
    auto apps = ojson::array();
    for (const auto& a : s.apps)
        apps.push_back({{"k", a.k},
                        {"tpr", a.mean.tpr},
                        {"fpr", a.mean.fpr},
                        {"quality_gap", quality_gap(a.mean.tpr, a.mean.fpr)},
                        {"gaps_scored", a.gaps_scored},
                        {"gaps_skipped", a.gaps_skipped}});
    j["apps"] = apps;
    auto per_phone = ojson::array();
    for (const auto& r : reports) {
        ojson p;
        p["phone_id"] = r.phone_id;
        p["test_start"] = r.test_start;
        p["test_slots"] = r.test_slots;
        p["cut"] = counts_json(r.cut);
        p["resume"] = counts_json(r.resume);
        p["resume_slot_hits"] = r.resume_slot_hits;
        p["resume_slot_misses"] = r.resume_slot_misses;
        auto pa = ojson::array();
        for (const auto& a : r.apps)
            pa.push_back({{"k", a.k},
                          {"tpr", a.mean.tpr},
                          {"fpr", a.mean.fpr},
                          {"gaps_scored", a.gaps_scored},
                          {"gaps_skipped", a.gaps_skipped}});
        p["apps"] = pa;
        per_phone.push_back(std::move(p));
    }
    j["per_phone"] = per_phone;
    return j.dump(2) + "\n";
}

Table roc_table(std::span<const CorpusSummary> summaries) {
    Table t{{"predictor", "kind", "parameter", "tpr", "fpr"}, {}};
    for (const auto& s : summaries) {
        t.rows.push_back({to_string(s.predictor), std::string("operating_point"), 0.0, s.cut.tpr, s.cut.fpr});
        for (const auto& p : s.cut_roc)
            t.rows.push_back({to_string(s.predictor), std::string("threshold"), p.parameter, p.tpr, p.fpr});
    }
    return t;
}

Table k_sweep_table(std::span<const KSweepRow> rows) {
    Table t{{"k", "tpr", "fpr", "quality_gap", "phones"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({std::int64_t{r.k}, r.mean.tpr, r.mean.fpr, r.quality_gap, static_cast<std::uint64_t>(r.phones)});
    return t;
}

std::string manifest_json(const RunManifest& m) {
    ojson j;
    j["command"] = m.command;
    try {
        j["parameters"] = ojson::parse(m.parameters.empty() ? "{}" : m.parameters);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigurationError(std::string("manifest parameters are not JSON: ") + e.what());
    }
    j["seed"] = m.seed;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["version"] = m.version;
    return j.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

}  // namespace pcach
