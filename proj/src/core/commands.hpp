#pragma once

#include <functional>
#include <string>
#include <vector>

namespace alphadisk {

using LogFn = std::function<void(const std::string&)>;

// Command results that are not exceptions. Configuration, I/O and numerical
// failures are thrown (ConfigError, IoError, NumericalError, DomainError).
enum class Outcome { ok = 0, acceptance_failure = 3 };

// Output root: $ALPHADISK_OUT when set, else "alphadisk-out".
std::string default_output_root();

struct KernelRow {
  double r = 0.0;
  double g_alpha = 0.0;
  double k_theta = 0.0;
  double bound_a_ratio = 0.0;  // |K^alpha| / (r (1 + |log r|))
  double bound_b_ratio = 0.0;  // |K^alpha| (1 + r)
  double cross_deriv = 0.0;    // d2 K1 + d1 K2 at (r, 0)
};

// `samples` log-spaced radii on [r_min, r_max].
std::vector<KernelRow> kernel_table(double alpha, int samples, double r_min, double r_max);

struct KernelTableOptions {
  double alpha = 1.0;
  int samples = 200;
  double r_min = 1e-3;
  double r_max = 30.0;
  bool svg = false;
};

// kernel_table.csv (+ kernel_table.svg). For alpha != 1 the table is also
// checked against the unit table through g_a(r) = g_1(r/sqrt a)/a and
// k_a(r) = k_1(r/sqrt a)/sqrt a.
Outcome cmd_kernel_table(const KernelTableOptions& opt, const std::string& out_dir,
                         const LogFn& log);

struct RadialRow {
  double alpha = 0.0;
  double eps = 0.0;
  double a_eps = 0.0;
  double b_eps = 0.0;
  double energy_identity = 0.0;
  double energy_quadrature = 0.0;
  double rel_gap = 0.0;
  double rate_ratio = 0.0;  // sqrt(energy) / (eps |log eps|)
};

RadialRow radial_row(double alpha, double eps);

struct RadialVerifyOptions {
  std::vector<double> alphas{1.0};
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025, 0.0125};
  double max_rel_gap = 1e-6;
  bool svg = false;
};

// radial_verify.csv; acceptance failure when any rel_gap exceeds max_rel_gap.
Outcome cmd_radial_verify(const RadialVerifyOptions& opt, const std::string& out_dir,
                          const LogFn& log);

enum class SimKind { plane, exterior };

// Writes a run directory. A numerical abort still writes the partial record
// (status "aborted") before the error propagates.
Outcome cmd_simulate(SimKind kind, const std::string& config_path, const std::string& out_dir,
                     const LogFn& log);

// converge.csv (eps, e_T, e_floor, runtime_s), converge_series.csv, converge.svg
// and one run directory per solve under runs/.
Outcome cmd_converge(const std::string& config_path, const std::string& out_dir,
                     const LogFn& log);

// picard.csv (iter, d_n, ratio); acceptance failure when a ratio exceeds max_ratio.
constexpr double kPicardMaxRatio = 0.6;
Outcome cmd_picard(const std::string& config_path, const std::string& out_dir, const LogFn& log);

}  // namespace alphadisk
