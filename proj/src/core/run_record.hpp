#pragma once

#include <string>
#include <vector>

#include "core/exterior_solver.hpp"
#include "core/plane_solver.hpp"

namespace alphadisk {

// Minimal CSV builder: header on line 1, '.' decimal separator, shortest
// round-trip number formatting, quoting only where RFC 4180 needs it.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(double x);
  CsvTable& cell(long x);
  CsvTable& cell(int x) { return cell(static_cast<long>(x)); }
  CsvTable& cell(const std::string& s);
  void end_row();

  std::string str() const;

 private:
  void sep();

  std::size_t columns_;
  std::size_t filled_ = 0;
  std::string out_;
};

struct Provenance {
  std::string tool_version;
  std::string started_utc;
  double wall_seconds = 0.0;
  std::string status = "completed";  // completed | aborted
  std::string message;
};

std::string utc_timestamp();

void ensure_directory(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string join_path(const std::string& a, const std::string& b);

std::string diagnostics_csv(const PlaneRun& run);
std::string diagnostics_csv(const ExteriorRun& run);
// Plane: one particle per row (x, y, weight, q). Exterior: one radius per row,
// one column per angle.
std::string snapshot_csv(const PlaneRun& run, std::size_t snapshot);
std::string snapshot_csv(const ExteriorRun& run, std::size_t snapshot);
std::string provenance_json(const Provenance& p);

// Run directory: config.echo, diagnostics.csv, provenance.json and, when
// requested, snapshots/NNNN.csv.
void write_run(const std::string& dir, const PlaneRun& run, const Provenance& p,
               bool snapshots = true);
void write_run(const std::string& dir, const ExteriorRun& run, const Provenance& p,
               bool snapshots = true);

}  // namespace alphadisk
