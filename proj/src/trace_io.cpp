#include "pcach/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pcach/errors.hpp"

namespace pcach {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::uint64_t byte_count(const json& v, std::size_t line, const char* field) {
    if (!v.is_number_integer()) throw ParseError(line, std::string(field) + " must be an integer");
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    const auto n = v.get<std::int64_t>();
    if (n < 0) throw ParseError(line, std::string(field) + " must be non-negative");
    return static_cast<std::uint64_t>(n);
}

MeasurementSample sample_from_json(const std::string& text, std::size_t line) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(line, e.what());
    }
    if (!j.is_object()) throw ParseError(line, "expected a JSON object");
    MeasurementSample s;
    try {
        const auto& t = j.at("t");
        if (!t.is_number_integer()) throw ParseError(line, "t must be an integer");
        s.timestamp = t.get<std::int64_t>();
        const auto& active = j.at("active");
        if (!active.is_string()) throw ParseError(line, "active must be a string");
        s.active = network_from_string(active.get<std::string>());
        const auto& ssid = j.at("ssid");
        if (ssid.is_string())
            s.connected_ssid = ssid.get<std::string>();
        else if (!ssid.is_null())
            throw ParseError(line, "ssid must be a string or null");
        const auto& visible = j.at("visible");
        if (!visible.is_array()) throw ParseError(line, "visible must be an array");
        for (const auto& v : visible) {
            if (!v.is_string()) throw ParseError(line, "visible entries must be strings");
            s.visible_ssids.insert(v.get<std::string>());
        }
        const auto& apps = j.at("apps");
        if (!apps.is_array()) throw ParseError(line, "apps must be an array");
        for (const auto& a : apps) {
            AppTrafficRecord r;
            if (!a.at("id").is_string()) throw ParseError(line, "app id must be a string");
            r.app_id = a.at("id").get<std::string>();
            r.up_bytes = byte_count(a.at("up"), line, "up");
            r.down_bytes = byte_count(a.at("down"), line, "down");
            if (!a.at("running").is_boolean()) throw ParseError(line, "running must be a boolean");
            r.running = a.at("running").get<bool>();
            s.apps.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ParseError(line, e.what());
    } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
    }
    try {
        validate_sample(s);
    } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
    return s;
}

// RFC 4180 style field split; quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(const std::string& line, std::size_t lineno) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw ParseError(lineno, "unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

template <class Int>
Int parse_int(const std::string& s, std::size_t line, const char* field) {
    Int v{};
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end) {
        if (!s.empty() && s[0] == '-' && std::is_unsigned_v<Int>)
            throw ParseError(line, std::string(field) + " must be non-negative");
        throw ParseError(line, std::string("bad integer in ") + field + ": '" + s + "'");
    }
    return v;
}

std::int64_t infer_period(const std::vector<MeasurementSample>& samples) {
    if (samples.size() < 2) return 300;
    std::vector<std::int64_t> diffs;
    diffs.reserve(samples.size() - 1);
    for (std::size_t i = 1; i < samples.size(); ++i)
        diffs.push_back(samples[i].timestamp - samples[i - 1].timestamp);
    auto mid = diffs.begin() + static_cast<std::ptrdiff_t>(diffs.size() / 2);
    std::nth_element(diffs.begin(), mid, diffs.end());
    return std::max<std::int64_t>(1, *mid);
}

// Stable sort, then keep the last record of each timestamp run.
std::vector<MeasurementSample> sort_and_collapse(std::vector<MeasurementSample> samples) {
    std::stable_sort(samples.begin(), samples.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    std::vector<MeasurementSample> out;
    out.reserve(samples.size());
    for (auto& s : samples) {
        if (!out.empty() && out.back().timestamp == s.timestamp)
            out.back() = std::move(s);
        else
            out.push_back(std::move(s));
    }
    return out;
}

Trace finish(std::string phone_id, std::vector<MeasurementSample> samples) {
    if (samples.empty()) throw EmptyTraceError("trace source contains no samples");
    Trace t;
    t.phone_id = std::move(phone_id);
    t.samples = sort_and_collapse(std::move(samples));
    t.nominal_period_s = infer_period(t.samples);
    validate_trace(t);
    return t;
}

Trace read_jsonl(std::istream& in, const std::string& phone_id) {
    std::vector<MeasurementSample> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        samples.push_back(sample_from_json(line, lineno));
    }
    return finish(phone_id, std::move(samples));
}

Trace read_csv(std::istream& in, const std::string& fallback_id) {
    std::vector<MeasurementSample> samples;
    std::string line;
    std::size_t lineno = 0;
    std::string phone_id;
    bool have_phone = false;
    bool open = false;  // samples.back() may still receive app rows
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        if (lineno == 1 && line.rfind("phone_id,", 0) == 0) continue;
        auto f = split_csv(line, lineno);
        if (f.size() != 9) throw ParseError(lineno, "expected 9 fields, got " + std::to_string(f.size()));
        if (!have_phone) {
            phone_id = f[0];
            have_phone = true;
        } else if (f[0] != phone_id) {
            throw ValidationError("line " + std::to_string(lineno) + ": multiple phone ids in one CSV trace");
        }
        MeasurementSample s;
        s.timestamp = parse_int<std::int64_t>(f[1], lineno, "t");
        try {
            s.active = network_from_string(f[2]);
        } catch (const ValidationError& e) {
            throw ParseError(lineno, e.what());
        }
        if (!f[3].empty()) s.connected_ssid = f[3];
        if (!f[4].empty()) {
            std::size_t start = 0;
            while (true) {
                auto pos = f[4].find(';', start);
                s.visible_ssids.insert(f[4].substr(start, pos - start));
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
        }
        const bool has_app = !f[5].empty();
        if (!has_app && !(f[6].empty() && f[7].empty() && f[8].empty()))
            throw ParseError(lineno, "app fields present without app_id");
        AppTrafficRecord r;
        if (has_app) {
            r.app_id = f[5];
            r.up_bytes = parse_int<std::uint64_t>(f[6], lineno, "up");
            r.down_bytes = parse_int<std::uint64_t>(f[7], lineno, "down");
            if (f[8] == "true")
                r.running = true;
            else if (f[8] != "false")
                throw ParseError(lineno, "running must be true or false");
        }
        const bool continues = open && samples.back().timestamp == s.timestamp;
        if (continues) {
            auto& prev = samples.back();
            if (prev.active != s.active || prev.connected_ssid != s.connected_ssid ||
                prev.visible_ssids != s.visible_ssids)
                throw ParseError(lineno, "rows of one sample disagree on connectivity fields");
            if (!has_app) throw ParseError(lineno, "empty app row inside a multi-row sample");
            prev.apps.push_back(std::move(r));
        } else {
            if (has_app) s.apps.push_back(std::move(r));
            samples.push_back(std::move(s));
        }
        open = has_app;
        try {
            validate_sample(samples.back());
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return finish(have_phone ? phone_id : fallback_id, std::move(samples));
}

void write_jsonl(std::ostream& out, const Trace& trace) {
    for (const auto& s : trace.samples) {
        ordered_json j;
        j["t"] = s.timestamp;
        j["active"] = std::string(to_string(s.active));
        j["ssid"] = s.connected_ssid ? ordered_json(*s.connected_ssid) : ordered_json(nullptr);
        j["visible"] = ordered_json::array();
        for (const auto& v : s.visible_ssids) j["visible"].push_back(v);
        j["apps"] = ordered_json::array();
        for (const auto& a : s.apps) {
            ordered_json aj;
            aj["id"] = a.app_id;
            aj["up"] = a.up_bytes;
            aj["down"] = a.down_bytes;
            aj["running"] = a.running;
            j["apps"].push_back(std::move(aj));
        }
        out << j.dump() << '\n';
    }
}

void write_csv(std::ostream& out, const Trace& trace) {
    out << kCsvHeader << '\n';
    const auto phone = csv_field(trace.phone_id);
    for (const auto& s : trace.samples) {
        std::string visible;
        for (const auto& v : s.visible_ssids) {
            if (v.find(';') != std::string::npos)
                throw ValidationError("ssid '" + v + "' contains ';' and cannot be written as CSV");
            if (!visible.empty()) visible += ';';
            visible += v;
        }
        std::ostringstream prefix;
        prefix << phone << ',' << s.timestamp << ',' << to_string(s.active) << ','
               << csv_field(s.connected_ssid.value_or("")) << ',' << csv_field(visible) << ',';
        if (s.apps.empty()) {
            out << prefix.str() << ",,,\n";
            continue;
        }
        for (const auto& a : s.apps) {
            out << prefix.str() << csv_field(a.app_id) << ',' << a.up_bytes << ',' << a.down_bytes << ','
                << (a.running ? "true" : "false") << '\n';
        }
    }
}

}  // namespace

TraceFormat trace_format_from_string(const std::string& s) {
    if (s == "jsonl" || s == "json") return TraceFormat::Jsonl;
    if (s == "csv") return TraceFormat::Csv;
    throw ParameterError("unknown trace format '" + s + "'");
}

std::string file_extension(TraceFormat f) { return f == TraceFormat::Jsonl ? ".jsonl" : ".csv"; }

Trace ingest_trace(std::istream& source, TraceFormat format, const std::string& phone_id) {
    return format == TraceFormat::Jsonl ? read_jsonl(source, phone_id) : read_csv(source, phone_id);
}

void write_trace(std::ostream& out, const Trace& trace, TraceFormat format) {
    if (format == TraceFormat::Jsonl)
        write_jsonl(out, trace);
    else
        write_csv(out, trace);
}

Trace load_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open trace file " + path.string());
    const auto format = path.extension() == ".csv" ? TraceFormat::Csv : TraceFormat::Jsonl;
    return ingest_trace(in, format, path.stem().string());
}

std::vector<std::filesystem::path> list_trace_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::is_directory(dir)) return files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const auto ext = e.path().extension();
        if (ext == ".jsonl" || ext == ".csv") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace pcach
