#include "ci/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ci {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Unknown: return "unknown";
    case Status::Info: return "info";
  }
  return "info";
}

namespace {

std::string status_tag(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Unknown: return "UNKNOWN";
    case Status::Info: return "INFO";
  }
  return "INFO";
}

}  // namespace

Report::Report(std::string command, nlohmann::json config)
    : command_(std::move(command)), config_(std::move(config)) {}

void Report::add(std::string kind, std::string key, Status status,
                 nlohmann::json payload) {
  records_.push_back(
      {std::move(kind), std::move(key), status, std::move(payload)});
}

long Report::count(Status s) const {
  long c = 0;
  for (const Record& r : records_)
    if (r.status == s) ++c;
  return c;
}

void Report::mark_incomplete(const std::string& reason) {
  incomplete_ = true;
  if (!incomplete_reason_.empty()) incomplete_reason_ += "; ";
  incomplete_reason_ += reason;
}

std::vector<Record> Report::sorted_records() const {
  std::vector<Record> sorted = records_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Record& a, const Record& b) {
                     if (a.kind != b.kind) return a.kind < b.kind;
                     return a.key < b.key;
                   });
  return sorted;
}

std::string Report::render_text() const {
  std::ostringstream out;
  out << kToolName << ' ' << kToolVersion << " - " << command_ << '\n';
  out << "config: " << config_.dump() << '\n';
  out << '\n';
  for (const Record& r : sorted_records()) {
    out << '[' << status_tag(r.status) << "] " << r.kind << ' ' << r.key;
    if (!r.payload.is_null() && !(r.payload.is_object() && r.payload.empty()))
      out << ' ' << r.payload.dump();
    out << '\n';
  }
  out << '\n';
  out << "summary: " << records_.size() << " records - " << count(Status::Pass)
      << " pass, " << count(Status::Fail) << " fail, "
      << count(Status::Unknown) << " unknown, " << count(Status::Info)
      << " info\n";
  if (incomplete_) out << "incomplete: " << incomplete_reason_ << '\n';
  out << "result: " << (has_failure() ? "FAILED" : "OK") << '\n';
  return out.str();
}

std::string Report::render_structured() const {
  std::ostringstream out;
  nlohmann::json meta = {
      {"schema_version", kSchemaVersion},
      {"type", "meta"},
      {"tool", kToolName},
      {"version", kToolVersion},
      {"command", command_},
      {"config", config_},
  };
  out << meta.dump() << '\n';
  for (const Record& r : sorted_records()) {
    nlohmann::json line = {
        {"schema_version", kSchemaVersion},
        {"type", "record"},
        {"kind", r.kind},
        {"key", r.key},
        {"status", to_string(r.status)},
        {"payload", r.payload},
    };
    out << line.dump() << '\n';
  }
  nlohmann::json summary = {
      {"schema_version", kSchemaVersion},
      {"type", "summary"},
      {"records", records_.size()},
      {"counts",
       {{"pass", count(Status::Pass)},
        {"fail", count(Status::Fail)},
        {"unknown", count(Status::Unknown)},
        {"info", count(Status::Info)}}},
      {"incomplete", incomplete_},
      {"result", has_failure() ? "failed" : "ok"},
  };
  if (incomplete_) summary["incomplete_reason"] = incomplete_reason_;
  out << summary.dump() << '\n';
  return out.str();
}

std::string render_report(const Report& report, const std::string& format) {
  if (format == "text") return report.render_text();
  if (format == "structured") return report.render_structured();
  throw std::invalid_argument("unknown report format: " + format);
}

void write_report(const Report& report, const std::string& out_path,
                  const std::string& format, std::ostream& fallback) {
  const std::string rendered = render_report(report, format);
  if (out_path.empty()) {
    fallback << rendered;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  file << rendered;
  if (!file) throw std::runtime_error("failed writing output file: " + out_path);
}

}  // namespace ci
