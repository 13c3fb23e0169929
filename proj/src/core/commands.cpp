#include "core/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/exterior_solver.hpp"
#include "core/kernels.hpp"
#include "core/plane_solver.hpp"
#include "core/radial_exterior.hpp"
#include "core/run_record.hpp"
#include "core/svg.hpp"

namespace alphadisk {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

void say(const LogFn& log, const std::string& s) {
  if (log) log(s);
}

Provenance provenance(const std::string& started, Clock::time_point t0) {
  Provenance p;
  p.tool_version = ALPHADISK_VERSION;
  p.started_utc = started;
  p.wall_seconds = seconds_since(t0);
  return p;
}

}  // namespace

std::string default_output_root() {
  const char* env = std::getenv("ALPHADISK_OUT");
  return (env != nullptr && *env != '\0') ? env : "alphadisk-out";
}

// ---------------------------------------------------------------------------

std::vector<KernelRow> kernel_table(double alpha, int samples, double r_min, double r_max) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("kernel table: alpha must be > 0");
  if (samples < 1) throw DomainError("kernel table: samples must be >= 1");
  if (!(r_min > 0.0) || !(r_max >= r_min) || !std::isfinite(r_max)) {
    throw DomainError("kernel table: need 0 < r_min <= r_max");
  }
  FilterParams p;
  p.alpha = alpha;
  std::vector<KernelRow> rows(samples);
  for (int k = 0; k < samples; ++k) {
    const double s = samples == 1 ? 0.0 : static_cast<double>(k) / (samples - 1);
    const double r = r_min * std::pow(r_max / r_min, s);
    KernelRow& row = rows[k];
    row.r = r;
    row.g_alpha = g_alpha(r, p);
    row.k_theta = k_theta(r, p);
    row.bound_a_ratio = std::abs(row.k_theta) / (r * (1.0 + std::abs(std::log(r))));
    row.bound_b_ratio = std::abs(row.k_theta) * (1.0 + r);
    const Mat2 j = grad_k_alpha({r, 0.0}, p);
    row.cross_deriv = j.m[0][1] + j.m[1][0];
  }
  return rows;
}

Outcome cmd_kernel_table(const KernelTableOptions& opt, const std::string& out_dir,
                         const LogFn& log) {
  const std::vector<KernelRow> rows = kernel_table(opt.alpha, opt.samples, opt.r_min, opt.r_max);
  CsvTable t({"r", "g_alpha", "k_theta", "bound_a_ratio", "bound_b_ratio", "cross_deriv"});
  bool finite = true;
  for (const KernelRow& r : rows) {
    t.cell(r.r).cell(r.g_alpha).cell(r.k_theta).cell(r.bound_a_ratio).cell(r.bound_b_ratio);
    t.cell(r.cross_deriv);
    t.end_row();
    finite = finite && std::isfinite(r.bound_a_ratio) && std::isfinite(r.bound_b_ratio) &&
             std::isfinite(r.cross_deriv);
  }
  ensure_directory(out_dir);
  write_text_file(join_path(out_dir, "kernel_table.csv"), t.str());
  say(log, "kernel_table.csv: " + std::to_string(rows.size()) + " rows, alpha = " +
               format_number(opt.alpha));
  Outcome out = finite ? Outcome::ok : Outcome::acceptance_failure;
  if (!finite) say(log, "non-finite bound ratio in table");

  if (opt.alpha != 1.0) {
    FilterParams unit;
    const double sa = std::sqrt(opt.alpha);
    double dev = 0.0;
    for (const KernelRow& r : rows) {
      const double g1 = g_alpha(r.r / sa, unit) / opt.alpha;
      const double k1 = k_theta(r.r / sa, unit) / sa;
      dev = std::max(dev, std::abs(r.g_alpha - g1) / std::abs(g1));
      dev = std::max(dev, std::abs(r.k_theta - k1) / std::abs(k1));
    }
    const bool ok = dev <= 1e-12;
    say(log, "scaling check against alpha = 1: max relative deviation " + fmt("%.3e", dev) +
                 (ok ? " (ok)" : " (FAILED, limit 1e-12)"));
    if (!ok) out = Outcome::acceptance_failure;
  }

  if (opt.svg) {
    SvgPlot plot{"Kernel profiles, alpha = " + format_number(opt.alpha), "r", "value", true, true,
                 {}};
    SvgSeries g{"g_alpha", {}, {}}, k{"k_theta", {}, {}}, c{"|cross_deriv|", {}, {}};
    for (const KernelRow& r : rows) {
      g.x.push_back(r.r);
      g.y.push_back(r.g_alpha);
      k.x.push_back(r.r);
      k.y.push_back(r.k_theta);
      c.x.push_back(r.r);
      c.y.push_back(std::abs(r.cross_deriv));
    }
    plot.series = {g, k, c};
    write_text_file(join_path(out_dir, "kernel_table.svg"), render_svg(plot));
  }
  return out;
}

// ---------------------------------------------------------------------------

RadialRow radial_row(double alpha, double eps) {
  FilterParams p;
  p.alpha = alpha;
  p.eps = eps;
  p.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("radial-verify: eps must lie in (0, 1)");
  RadialRow row;
  row.alpha = alpha;
  row.eps = eps;
  row.a_eps = a_eps(p);
  row.b_eps = b_eps(p);
  row.energy_identity = w4_h1_energy(p, EnergyMode::identity);
  row.energy_quadrature = w4_h1_energy(p, EnergyMode::quadrature);
  row.rel_gap = std::abs(row.energy_identity - row.energy_quadrature) / row.energy_identity;
  row.rate_ratio = std::sqrt(row.energy_identity) / (eps * std::abs(std::log(eps)));
  return row;
}

Outcome cmd_radial_verify(const RadialVerifyOptions& opt, const std::string& out_dir,
                          const LogFn& log) {
  if (opt.alphas.empty() || opt.eps.empty()) {
    throw DomainError("radial-verify: alpha and eps lists must be non-empty");
  }
  CsvTable t({"alpha", "eps", "a_eps", "b_eps", "energy_identity", "energy_quadrature",
              "rel_gap", "rate_ratio"});
  double worst = 0.0;
  SvgPlot plot{"sqrt(energy) / (eps |log eps|)", "eps", "rate ratio", true, false, {}};
  for (double alpha : opt.alphas) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    SvgSeries s{"alpha = " + format_number(alpha), {}, {}};
    for (double eps : opt.eps) {
      const RadialRow r = radial_row(alpha, eps);
      t.cell(r.alpha).cell(r.eps).cell(r.a_eps).cell(r.b_eps).cell(r.energy_identity);
      t.cell(r.energy_quadrature).cell(r.rel_gap).cell(r.rate_ratio);
      t.end_row();
      worst = std::max(worst, r.rel_gap);
      lo = std::min(lo, r.rate_ratio);
      hi = std::max(hi, r.rate_ratio);
      s.x.push_back(eps);
      s.y.push_back(r.rate_ratio);
    }
    say(log, "alpha " + format_number(alpha) + ": rate_ratio in [" + fmt("%.5g", lo) + ", " +
                 fmt("%.5g", hi) + "], variation (max-min)/max = " +
                 fmt("%.1f%%", 100.0 * (hi - lo) / hi));
    plot.series.push_back(s);
  }
  ensure_directory(out_dir);
  write_text_file(join_path(out_dir, "radial_verify.csv"), t.str());
  if (opt.svg) write_text_file(join_path(out_dir, "radial_verify.svg"), render_svg(plot));
  const bool ok = worst <= opt.max_rel_gap;
  say(log, "largest rel_gap " + fmt("%.3e", worst) + (ok ? " (ok)" : " (FAILED, limit ") +
               (ok ? "" : fmt("%.1e)", opt.max_rel_gap)));
  return ok ? Outcome::ok : Outcome::acceptance_failure;
}

// ---------------------------------------------------------------------------

Outcome cmd_simulate(SimKind kind, const std::string& config_path, const std::string& out_dir,
                     const LogFn& log) {
  const ConfigFile file = ConfigFile::load(config_path);
  const std::string started = utc_timestamp();
  const auto t0 = Clock::now();
  ensure_directory(out_dir);

  auto finish = [&](auto& run, const std::exception* error) {
    Provenance p = provenance(started, t0);
    if (error != nullptr) {
      p.status = "aborted";
      p.message = error->what();
    }
    write_run(out_dir, run, p);
    say(log, std::string(error ? "aborted" : "completed") + ": " +
                 std::to_string(run.diagnostics.size()) + " diagnostic rows, " +
                 std::to_string(run.snapshots.size()) + " snapshots in " + out_dir);
  };

  if (kind == SimKind::plane) {
    const PlaneSimConfig c = plane_config(file);
    PlaneRun partial;
    try {
      PlaneRun run = run_plane(c, &partial);
      finish(run, nullptr);
    } catch (const NumericalError& e) {
      finish(partial, &e);
      throw;
    }
  } else {
    const ExteriorSimConfig c = exterior_config(file);
    ExteriorRun partial;
    try {
      ExteriorRun run = run_exterior(c, &partial);
      finish(run, nullptr);
    } catch (const NumericalError& e) {
      finish(partial, &e);
      throw;
    }
  }
  return Outcome::ok;
}

// ---------------------------------------------------------------------------

Outcome cmd_converge(const std::string& config_path, const std::string& out_dir,
                     const LogFn& log) {
  const ConvergeConfig cfg = converge_config(ConfigFile::load(config_path));
  ensure_directory(out_dir);
  write_text_file(join_path(out_dir, "config.echo"), echo(cfg));
  const std::string runs = join_path(out_dir, "runs");

  const std::string started = utc_timestamp();
  auto t0 = Clock::now();
  const PlaneRun plane = run_plane(cfg.plane());
  write_run(join_path(runs, "plane"), plane, provenance(started, t0), false);
  say(log, "plane run: " + std::to_string(plane.initial.size()) + " particles, " +
               fmt("%.1f s", seconds_since(t0)));

  CsvTable table({"eps", "e_T", "e_floor", "runtime_s"});
  CsvTable series({"eps", "t", "e"});
  SvgPlot plot{"Weak-* proxy error at t_end", "eps", "e_T", true, true, {}};
  SvgSeries line{"e_T", {}, {}};
  std::vector<double> e_t;
  for (std::size_t k = 0; k < cfg.eps.size(); ++k) {
    ExteriorSimConfig c = cfg.exterior;
    c.params.eps = c.grid.eps = cfg.eps[k];
    const std::string started_k = utc_timestamp();
    t0 = Clock::now();
    const ExteriorRun run = run_exterior(c);
    const double runtime = seconds_since(t0);
    const LimitComparison cmp = compare_to_limit(run, plane, cfg.excise);
    write_run(join_path(runs, "eps_" + std::to_string(k)), run, provenance(started_k, t0), false);
    table.cell(cfg.eps[k]).cell(cmp.e.back()).cell(cmp.floor).cell(runtime);
    table.end_row();
    for (std::size_t s = 0; s < cmp.t.size(); ++s) {
      series.cell(cfg.eps[k]).cell(cmp.t[s]).cell(cmp.e[s]);
      series.end_row();
    }
    line.x.push_back(cfg.eps[k]);
    line.y.push_back(cmp.e.back());
    e_t.push_back(cmp.e.back());
    say(log, "eps " + format_number(cfg.eps[k]) + ": e_T " + fmt("%.4e", cmp.e.back()) +
                 ", floor " + fmt("%.4e", cmp.floor) + ", " + fmt("%.1f s", runtime));
  }
  plot.series.push_back(line);
  write_text_file(join_path(out_dir, "converge.csv"), table.str());
  write_text_file(join_path(out_dir, "converge_series.csv"), series.str());
  write_text_file(join_path(out_dir, "converge.svg"), render_svg(plot));

  // Report the trend ordered from largest to smallest eps.
  std::vector<std::size_t> order(cfg.eps.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return cfg.eps[a] > cfg.eps[b]; });
  bool decreasing = true;
  for (std::size_t k = 1; k < order.size(); ++k) {
    decreasing = decreasing && e_t[order[k]] < e_t[order[k - 1]];
  }
  say(log, std::string("e_T ") + (decreasing ? "strictly decreases" : "does not strictly decrease") +
               " as eps shrinks");
  return Outcome::ok;
}

// ---------------------------------------------------------------------------

Outcome cmd_picard(const std::string& config_path, const std::string& out_dir, const LogFn& log) {
  const ConfigFile file = ConfigFile::load(config_path);
  const PicardConfig pc = picard_config(file);
  const ExteriorSimConfig c = exterior_config(file, false);
  ensure_directory(out_dir);
  write_text_file(join_path(out_dir, "config.echo"), echo(c) + "\n" + echo(pc));

  const auto t0 = Clock::now();
  const PicardResult res = picard(c, pc);
  CsvTable t({"iter", "d_n", "ratio"});
  bool ok = true;
  for (std::size_t n = 0; n < res.d.size(); ++n) {
    t.cell(static_cast<long>(n + 1)).cell(res.d[n]);
    if (n < res.ratio.size() && std::isfinite(res.ratio[n])) {
      t.cell(res.ratio[n]);
      ok = ok && res.ratio[n] <= kPicardMaxRatio;
    } else {
      t.cell(std::string("n/a"));
    }
    t.end_row();
  }
  write_text_file(join_path(out_dir, "picard.csv"), t.str());
  std::string line = "d_n:";
  for (double d : res.d) line += " " + fmt("%.3e", d);
  say(log, line);
  say(log, "noise floor " + fmt("%.3e", res.noise_floor) + ", " + fmt("%.1f s", seconds_since(t0)));
  say(log, ok ? "all ratios <= 0.6" : "a ratio exceeds 0.6 (FAILED)");
  return ok ? Outcome::ok : Outcome::acceptance_failure;
}

}  // namespace alphadisk
