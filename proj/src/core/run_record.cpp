#include "core/run_record.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "core/config.hpp"
#include "core/error.hpp"

namespace alphadisk {

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (const std::string& h : header) cell(h);
  end_row();
}

void CsvTable::sep() {
  if (filled_ == columns_) throw DomainError("csv: too many cells in row");
  if (filled_ > 0) out_ += ',';
  ++filled_;
}

CsvTable& CsvTable::cell(double x) {
  sep();
  out_ += format_number(x);
  return *this;
}

CsvTable& CsvTable::cell(long x) {
  sep();
  out_ += std::to_string(x);
  return *this;
}

CsvTable& CsvTable::cell(const std::string& s) {
  sep();
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out_ += s;
    return *this;
  }
  out_ += '"';
  for (char c : s) {
    if (c == '"') out_ += '"';
    out_ += c;
  }
  out_ += '"';
  return *this;
}

void CsvTable::end_row() {
  if (filled_ != columns_) throw DomainError("csv: row has missing cells");
  out_ += '\n';
  filled_ = 0;
}

std::string CsvTable::str() const { return out_; }

// ---------------------------------------------------------------------------

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path)) {
    throw IoError("cannot create output directory '" + path + "'");
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.close();
  if (!out) throw IoError("write failed for '" + path + "'");
}

std::string join_path(const std::string& a, const std::string& b) {
  return (std::filesystem::path(a) / b).string();
}

// ---------------------------------------------------------------------------

std::string diagnostics_csv(const PlaneRun& run) {
  CsvTable t({"t", "mass", "max_radius", "angular_impulse", "max_blob_speed"});
  for (const PlaneDiagnostics& d : run.diagnostics) {
    t.cell(d.t).cell(d.mass).cell(d.max_radius).cell(d.angular_impulse).cell(d.max_blob_speed);
    t.end_row();
  }
  return t.str();
}

std::string diagnostics_csv(const ExteriorRun& run) {
  CsvTable t({"t", "mass", "q_max", "q_min", "support_radius", "max_speed", "max_blob_speed",
              "cfl", "foot_violations", "dropped_fraction"});
  for (const ExteriorDiagnostics& d : run.diagnostics) {
    t.cell(d.t).cell(d.mass).cell(d.q_max).cell(d.q_min).cell(d.support_radius);
    t.cell(d.max_speed).cell(d.max_blob_speed).cell(d.cfl).cell(d.foot_violations);
    t.cell(d.dropped_fraction);
    t.end_row();
  }
  return t.str();
}

std::string snapshot_csv(const PlaneRun& run, std::size_t snapshot) {
  const PlaneSnapshot& s = run.snapshots.at(snapshot);
  CsvTable t({"x", "y", "weight", "q"});
  for (std::size_t j = 0; j < s.positions.size(); ++j) {
    t.cell(s.positions[j].x1).cell(s.positions[j].x2);
    t.cell(run.initial.weights[j]).cell(run.initial.q_values[j]);
    t.end_row();
  }
  return t.str();
}

std::string snapshot_csv(const ExteriorRun& run, std::size_t snapshot) {
  const ExteriorSnapshot& s = run.snapshots.at(snapshot);
  const int nt = run.config.grid.n_theta;
  std::vector<std::string> header{"r"};
  for (int j = 0; j < nt; ++j) header.push_back("theta_" + std::to_string(j));
  CsvTable t(header);
  for (std::size_t i = 0; i < run.r.size(); ++i) {
    t.cell(run.r[i]);
    for (int j = 0; j < nt; ++j) t.cell(s.values[i * nt + j]);
    t.end_row();
  }
  return t.str();
}

std::string provenance_json(const Provenance& p) {
  nlohmann::ordered_json j;
  j["tool"] = "alphadisk";
  j["version"] = p.tool_version;
  j["started_utc"] = p.started_utc;
  j["wall_seconds"] = p.wall_seconds;
  j["seed"] = nullptr;  // no randomness anywhere
  j["status"] = p.status;
  j["message"] = p.message;
  return j.dump(2) + "\n";
}

namespace {

std::string snapshot_name(std::size_t k, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04zu_t%.6f.csv", k, t);
  return buf;
}

template <class Run>
void write_common(const std::string& dir, const Run& run, const std::string& echo_text,
                  const Provenance& p, bool snapshots) {
  ensure_directory(dir);
  write_text_file(join_path(dir, "config.echo"), echo_text);
  write_text_file(join_path(dir, "diagnostics.csv"), diagnostics_csv(run));
  write_text_file(join_path(dir, "provenance.json"), provenance_json(p));
  if (!snapshots) return;
  const std::string sdir = join_path(dir, "snapshots");
  ensure_directory(sdir);
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    write_text_file(join_path(sdir, snapshot_name(k, run.snapshots[k].t)), snapshot_csv(run, k));
  }
}

}  // namespace

// The echo carries the resolved step so rerunning it reproduces the run.
void write_run(const std::string& dir, const PlaneRun& run, const Provenance& p, bool snapshots) {
  PlaneSimConfig c = run.config;
  if (run.steps > 0) c.dt = run.dt;
  write_common(dir, run, echo(c), p, snapshots);
}

void write_run(const std::string& dir, const ExteriorRun& run, const Provenance& p,
               bool snapshots) {
  ExteriorSimConfig c = run.config;
  if (run.steps > 0) c.dt = run.dt;
  write_common(dir, run, echo(c), p, snapshots);
}

}  // namespace alphadisk
