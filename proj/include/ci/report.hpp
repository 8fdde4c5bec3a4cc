// Run reports: typed result records with a pass/fail status, assembled into
// a deterministic report that renders either as human-readable text or as
// line-delimited JSON (one record per line, fixed schema version, records
// sorted by key). See docs/report-schema.md for the structured layout.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace ci {

inline constexpr const char* kToolName = "civerify";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class Status { Pass, Fail, Unknown, Info };

// Lowercase name used in structured output ("pass", "fail", ...).
std::string to_string(Status s);

struct Record {
  std::string kind;        // record family, e.g. "certificate"
  std::string key;         // identifies the record within its kind
  Status status = Status::Info;
  nlohmann::json payload;  // record data; keys render sorted
};

// Accumulates records for one command run. Summary counts are computed from
// the stored records, so they always equal the record tallies. The exit
// code reflects only failed records: unknown and info do not fail a run.
class Report {
 public:
  Report(std::string command, nlohmann::json config);

  void add(std::string kind, std::string key, Status status,
           nlohmann::json payload);

  const std::string& command() const { return command_; }
  const nlohmann::json& config() const { return config_; }
  const std::vector<Record>& records() const { return records_; }

  long count(Status s) const;
  bool has_failure() const { return count(Status::Fail) > 0; }
  int exit_code() const { return has_failure() ? 1 : 0; }

  // Marks the report as a partial result (some work was skipped, e.g. a
  // point budget was exceeded). Does not affect the exit code by itself.
  void mark_incomplete(const std::string& reason);
  bool incomplete() const { return incomplete_; }

  // Human-readable rendering: header, one line per record, summary.
  std::string render_text() const;

  // Line-delimited JSON: a meta line, one line per record sorted by
  // (kind, key), and a closing summary line. Deterministic byte-for-byte
  // for identical configs and record sets.
  std::string render_structured() const;

 private:
  std::vector<Record> sorted_records() const;

  std::string command_;
  nlohmann::json config_;
  std::vector<Record> records_;
  bool incomplete_ = false;
  std::string incomplete_reason_;
};

// Renders in the requested format ("text" or "structured"); throws
// std::invalid_argument for any other format name.
std::string render_report(const Report& report, const std::string& format);

// Writes the rendered report to `out_path`, or to `fallback` when the path
// is empty. Throws std::runtime_error when the file cannot be written.
void write_report(const Report& report, const std::string& out_path,
                  const std::string& format, std::ostream& fallback);

}  // namespace ci
