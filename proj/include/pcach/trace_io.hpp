#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcach/trace.hpp"

namespace pcach {

enum class TraceFormat { Jsonl, Csv };

TraceFormat trace_format_from_string(const std::string& s);  // "jsonl" | "csv"
std::string file_extension(TraceFormat f);                    // ".jsonl" | ".csv"

/// Reads one phone's trace. Samples are sorted by timestamp and a repeated
/// timestamp keeps the last record. JSONL carries no phone id, so
/// `phone_id` names the trace; CSV rows carry their own and `phone_id` is
/// only used when it is non-empty and the file has no rows (never, since an
/// empty source is an error).
Trace ingest_trace(std::istream& source, TraceFormat format, const std::string& phone_id = {});

/// Emits fields in schema order. CSV output starts with a header row.
void write_trace(std::ostream& out, const Trace& trace, TraceFormat format);

/// Reads a file, deriving the JSONL phone id from the file stem.
Trace load_trace_file(const std::filesystem::path& path);

/// Sorted list of *.jsonl / *.csv files in `dir`.
std::vector<std::filesystem::path> list_trace_files(const std::filesystem::path& dir);

inline constexpr const char* kCsvHeader = "phone_id,t,active,ssid,visible,app_id,up,down,running";

}  // namespace pcach
