#include "core/exterior_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/radial_exterior.hpp"

namespace alphadisk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool same_vorticity(const VorticitySpec& a, const VorticitySpec& b) {
  return a.kind == b.kind && a.amplitude == b.amplitude && a.centre == b.centre &&
         a.radius == b.radius && a.ring_radius == b.ring_radius && a.ring_width == b.ring_width;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

GridVelocity average(const GridVelocity& a, const GridVelocity& b) {
  GridVelocity m = a;
  for (std::size_t k = 0; k < m.u_r.size(); ++k) {
    m.u_r[k] = 0.5 * (a.u_r[k] + b.u_r[k]);
    m.u_theta[k] = 0.5 * (a.u_theta[k] + b.u_theta[k]);
  }
  return m;
}

}  // namespace

void ExteriorSimConfig::validate() const {
  params.validate();
  grid.validate();
  q0.validate();
  if (!(params.eps > 0.0)) throw DomainError("exterior: eps must be > 0");
  if (grid.eps != params.eps) throw DomainError("exterior: grid eps differs from eps");
  if (n_modes < 1) throw DomainError("exterior: n_modes must be >= 1");
  if (grid.n_theta < 2 * n_modes + 2) {
    throw DomainError("exterior: n_theta must be at least 2 n_modes + 2");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("exterior: dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("exterior: t_end must be >= 0");
  if (snapshot_stride < 1) throw DomainError("exterior: snapshot_stride must be >= 1");
  if (max_foot_violations < 0) throw DomainError("exterior: max_foot_violations must be >= 0");
  if (q0.kind != VorticitySpec::Kind::zero) {
    if (q0.inner_radius() <= params.eps) {
      throw DomainError("exterior: initial support must stay outside the obstacle");
    }
    if (q0.outer_radius() >= 0.8 * grid.r_max) {
      throw DomainError("exterior: r_max must exceed 1.25 x the initial support radius");
    }
  }
}

PolarField ExteriorRun::field_at(std::size_t snapshot) const {
  if (snapshot >= snapshots.size()) throw DomainError("exterior run: snapshot out of range");
  PolarField f(config.grid);
  f.values = snapshots[snapshot].values;
  return f;
}

// ---------------------------------------------------------------------------

PolarInterpolator::PolarInterpolator(const std::vector<double>& r, int n_theta,
                                     Interpolation mode)
    : r_(r), n_theta_(n_theta), mode_(mode) {
  if (r_.size() < 4) throw DomainError("interpolator: at least 4 radial nodes required");
  if (n_theta_ < 4) throw DomainError("interpolator: at least 4 angles required");
}

PolarInterpolator::Stencil PolarInterpolator::stencil(double r, double theta) const {
  Stencil s{};
  const std::size_t n = r_.size();
  r = std::clamp(r, r_.front(), r_.back());
  std::size_t k = static_cast<std::size_t>(std::upper_bound(r_.begin(), r_.end(), r) - r_.begin());
  k = std::clamp<std::size_t>(k == 0 ? 0 : k - 1, 0, n - 2);
  const std::size_t start = std::min(k == 0 ? 0 : k - 1, n - 4);
  s.cell_r = static_cast<int>(k - start);
  for (int a = 0; a < 4; ++a) {
    s.i[a] = start + a;
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) w *= (r - r_[start + b]) / (r_[start + a] - r_[start + b]);
    }
    s.wr[a] = w;
  }

  const double h = kTwoPi / n_theta_;
  const double x = wrap_angle(theta) / h;
  int j0 = static_cast<int>(std::floor(x));
  double t = x - j0;
  if (j0 >= n_theta_) {
    j0 -= n_theta_;
  }
  s.wt[0] = -t * (t - 1.0) * (t - 2.0) / 6.0;
  s.wt[1] = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  s.wt[2] = -(t + 1.0) * t * (t - 2.0) / 2.0;
  s.wt[3] = (t + 1.0) * t * (t - 1.0) / 6.0;
  for (int b = 0; b < 4; ++b) s.j[b] = (j0 - 1 + b + n_theta_) % n_theta_;
  return s;
}

double PolarInterpolator::smooth(const std::vector<double>& v, double r, double theta) const {
  const Stencil s = stencil(r, theta);
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double* row = v.data() + s.i[a] * n_theta_;
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) acc += s.wt[b] * row[s.j[b]];
    out += s.wr[a] * acc;
  }
  return out;
}

double PolarInterpolator::operator()(const std::vector<double>& v, double r,
                                     double theta) const {
  const Stencil s = stencil(r, theta);
  const std::size_t i0 = s.i[s.cell_r];
  const std::size_t i1 = s.i[s.cell_r + 1];
  const int j0 = s.j[1];
  const int j1 = s.j[2];
  const double c00 = v[i0 * n_theta_ + j0];
  const double c01 = v[i0 * n_theta_ + j1];
  const double c10 = v[i1 * n_theta_ + j0];
  const double c11 = v[i1 * n_theta_ + j1];

  if (mode_ == Interpolation::bilinear) {
    const double rc = std::clamp(r, r_.front(), r_.back());
    const double fr = (rc - r_[i0]) / (r_[i1] - r_[i0]);
    const double h = kTwoPi / n_theta_;
    const double x = wrap_angle(theta) / h;
    const double ft = x - std::floor(x);
    return (1.0 - fr) * ((1.0 - ft) * c00 + ft * c01) + fr * ((1.0 - ft) * c10 + ft * c11);
  }

  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double* row = v.data() + s.i[a] * n_theta_;
    double acc = 0.0;
    for (int b = 0; b < 4; ++b) acc += s.wt[b] * row[s.j[b]];
    out += s.wr[a] * acc;
  }
  const double lo = std::min({c00, c01, c10, c11});
  const double hi = std::max({c00, c01, c10, c11});
  return std::clamp(out, lo, hi);
}

// ---------------------------------------------------------------------------

void transport_step(const PolarField& q, const GridVelocity& u, double dt,
                    const PolarInterpolator& interp, PolarField& out, StepStats& stats) {
  const int nr = q.n_r();
  const int nt = q.n_theta();
  const double eps = q.r.front();
  const double rmax = q.r.back();
  out.values.assign(q.values.size(), 0.0);
  for (int i = 0; i < nr; ++i) {
    const double r = q.r[i];
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * nt + j;
      const double th = q.grid.theta(j);
      const double rm = std::clamp(r - 0.5 * dt * u.u_r[k], eps, rmax);
      const double tm = th - 0.5 * dt * u.u_theta[k] / r;
      const double urm = interp.smooth(u.u_r, rm, tm);
      const double utm = interp.smooth(u.u_theta, rm, tm);
      double rf = r - dt * urm;
      const double tf = th - dt * utm / rm;
      if (!std::isfinite(rf) || !std::isfinite(tf)) {
        throw NumericalError("exterior: non-finite departure point");
      }
      if (rf > rmax) continue;  // inflow from outside the grid carries q = 0
      if (rf < eps) {
        ++stats.foot_violations;
        rf = eps;
      }
      out.values[k] = interp(q.values, rf, tf);
    }
  }
}

namespace {

struct VelocityEval {
  GridVelocity grid;
  double dropped_fraction = 0.0;
  double beta = 0.0;
};

VelocityEval velocity_of(const ModeSolver& solver, const PolarField& q, double gamma) {
  const ModeCoefficients c = analyze(q, solver.n_modes());
  const ModeField f = solver.filtered_velocity(c, gamma);
  return {velocity_on_grid(f), c.dropped_fraction, f.params.beta()};
}

ExteriorDiagnostics diagnose(const PolarField& q, const VelocityEval& v,
                             const ExteriorSimConfig& cfg, double dt, double support_level) {
  ExteriorDiagnostics d;
  d.mass = q.mass();
  d.q_max = *std::max_element(q.values.begin(), q.values.end());
  d.q_min = *std::min_element(q.values.begin(), q.values.end());
  d.dropped_fraction = v.dropped_fraction;
  const int nr = q.n_r();
  const int nt = q.n_theta();
  const double dth = kTwoPi / nt;
  FilterParams p = cfg.params;
  for (int i = 0; i < nr; ++i) {
    const double r = q.r[i];
    const double w3 = v.beta * filtered_harmonic(r, p);
    double dr = std::numeric_limits<double>::infinity();
    if (i > 0) dr = std::min(dr, r - q.r[i - 1]);
    if (i + 1 < nr) dr = std::min(dr, q.r[i + 1] - r);
    for (int j = 0; j < nt; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * nt + j;
      const double ur = v.grid.u_r[k];
      const double ut = v.grid.u_theta[k];
      d.max_speed = std::max(d.max_speed, std::hypot(ur, ut));
      d.max_blob_speed = std::max(d.max_blob_speed, std::hypot(ur, ut - w3));
      d.cfl = std::max(d.cfl, dt * (std::abs(ur) / dr + std::abs(ut) / (r * dth)));
      if (std::abs(q.values[k]) > support_level) d.support_radius = std::max(d.support_radius, r);
    }
  }
  return d;
}

int step_count(double t_end, double dt) {
  const double n = std::ceil(t_end / dt - 1e-9);
  if (n > 1e7) throw DomainError("exterior: too many steps (t_end / dt > 1e7)");
  return std::max(1, static_cast<int>(n));
}

}  // namespace

ExteriorRun run_exterior(const ExteriorSimConfig& config, ExteriorRun* partial) {
  config.validate();
  ExteriorRun run;
  run.config = config;
  run.steps = config.t_end > 0.0 ? step_count(config.t_end, config.dt) : 0;
  run.dt = run.steps > 0 ? config.t_end / run.steps : config.dt;

  const ModeSolver solver(config.grid, config.params.alpha, config.n_modes);
  const PolarInterpolator interp(solver.radii(), config.grid.n_theta, config.interpolation);
  run.r = solver.radii();

  PolarField q(config.grid, [&](Point2 x) { return config.q0.value(x); });
  PolarField next(config.grid);
  PolarField pred(config.grid);
  const double support_level = 1e-3 * std::max(q.max_abs(), 1e-300);
  const double gamma = config.params.gamma;

  VelocityEval v = velocity_of(solver, q, gamma);
  long violations = 0;
  auto record = [&](int step) {
    ExteriorDiagnostics d = diagnose(q, v, config, run.dt, support_level);
    d.t = step * run.dt;
    d.foot_violations = violations;
    run.diagnostics.push_back(d);
    if (step % config.snapshot_stride == 0 || step == run.steps) {
      run.snapshots.push_back({d.t, q.values});
    }
  };
  record(0);

  try {
    for (int step = 1; step <= run.steps; ++step) {
      StepStats stats;
      if (config.corrector) {
        StepStats scratch;
        transport_step(q, v.grid, run.dt, interp, pred, scratch);
        const VelocityEval vp = velocity_of(solver, pred, gamma);
        transport_step(q, average(v.grid, vp.grid), run.dt, interp, next, stats);
      } else {
        transport_step(q, v.grid, run.dt, interp, next, stats);
      }
      if (stats.foot_violations > config.max_foot_violations) {
        const double cfl = run.diagnostics.back().cfl;
        throw NumericalError("exterior: " + std::to_string(stats.foot_violations) +
                             " departure points inside the obstacle at step " +
                             std::to_string(step) + " (CFL " + std::to_string(cfl) +
                             "); reduce dt or refine the radial grid near eps");
      }
      violations += stats.foot_violations;
      std::swap(q.values, next.values);
      v = velocity_of(solver, q, gamma);
      for (double x : q.values) {
        if (!std::isfinite(x)) throw NumericalError("exterior: non-finite vorticity");
      }
      record(step);
    }
  } catch (...) {
    if (partial != nullptr) *partial = std::move(run);
    throw;
  }
  return run;
}

// ---------------------------------------------------------------------------

PicardResult picard(const ExteriorSimConfig& config, const PicardConfig& pc) {
  config.validate();
  if (pc.n_iters < 2) throw DomainError("picard: n_iters must be >= 2");
  if (!(pc.t0 > 0.0) || !std::isfinite(pc.t0)) throw DomainError("picard: t0 must be > 0");
  if (pc.dt < 0.0) throw DomainError("picard: dt must be >= 0");
  const double dt_req = pc.dt > 0.0 ? pc.dt : config.dt;
  const int steps = step_count(pc.t0, dt_req);
  const double dt = pc.t0 / steps;

  const ModeSolver solver(config.grid, config.params.alpha, config.n_modes);
  const PolarInterpolator interp(solver.radii(), config.grid.n_theta, config.interpolation);
  const PolarField q0(config.grid, [&](Point2 x) { return config.q0.value(x); });
  const double gamma = config.params.gamma;

  PicardResult res;
  res.noise_floor = 1e-14 * solver.poisson_gradient_norm(analyze(q0, config.n_modes));

  std::vector<PolarField> prev(steps + 1, q0);  // iterate 0 is frozen in time
  std::vector<PolarField> cur(steps + 1, q0);
  for (int n = 1; n <= pc.n_iters; ++n) {
    std::vector<GridVelocity> u(steps + 1);
    for (int k = 0; k <= steps; ++k) u[k] = velocity_of(solver, prev[k], gamma).grid;
    cur[0] = q0;
    StepStats stats;
    for (int k = 0; k < steps; ++k) {
      transport_step(cur[k], average(u[k], u[k + 1]), dt, interp, cur[k + 1], stats);
    }
    double d = 0.0;
    for (int k = 0; k <= steps; ++k) {
      PolarField diff(config.grid);
      for (std::size_t m = 0; m < diff.values.size(); ++m) {
        diff.values[m] = cur[k].values[m] - prev[k].values[m];
      }
      d = std::max(d, solver.poisson_gradient_norm(analyze(diff, config.n_modes)));
    }
    res.d.push_back(d);
    std::swap(prev, cur);
  }
  for (std::size_t n = 0; n + 1 < res.d.size(); ++n) {
    res.ratio.push_back(res.d[n] > res.noise_floor ? res.d[n + 1] / res.d[n]
                                                   : std::numeric_limits<double>::quiet_NaN());
  }
  return res;
}

// ---------------------------------------------------------------------------

double TestFunction::operator()(Point2 x) const {
  const double d = (x - centre).norm();
  if (d >= radius) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * d / radius);
  return c * c;
}

std::vector<TestFunction> test_dictionary(const PlaneRun& plane) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const PlaneSnapshot& s : plane.snapshots) {
    for (std::size_t j = 0; j < s.positions.size(); ++j) {
      if (plane.initial.weights[j] == 0.0) continue;
      x0 = std::min(x0, s.positions[j].x1);
      x1 = std::max(x1, s.positions[j].x1);
      y0 = std::min(y0, s.positions[j].x2);
      y1 = std::max(y1, s.positions[j].x2);
    }
  }
  if (!(x1 >= x0)) throw DomainError("test dictionary: plane run has no particles");
  const double pad = 0.1 * std::max(x1 - x0, y1 - y0);
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const bool wide = (x1 - x0) >= (y1 - y0);
  const int nx = wide ? 4 : 3;
  const int ny = wide ? 3 : 4;
  const double cx = (x1 - x0) / nx;
  const double cy = (y1 - y0) / ny;
  const double radius = 0.75 * std::max(cx, cy);
  std::vector<TestFunction> out;
  for (int a = 0; a < nx; ++a) {
    for (int b = 0; b < ny; ++b) {
      out.push_back({{x0 + (a + 0.5) * cx, y0 + (b + 0.5) * cy}, radius});
    }
  }
  return out;
}

namespace {

std::vector<double> plane_moments(const PlaneRun& plane, std::size_t snapshot,
                                  const std::vector<TestFunction>& phi, double excise_radius) {
  const PlaneSnapshot& s = plane.snapshots[snapshot];
  std::vector<double> m(phi.size(), 0.0);
  for (std::size_t j = 0; j < s.positions.size(); ++j) {
    const double w = plane.initial.weights[j];
    if (w == 0.0 || s.positions[j].norm() < excise_radius) continue;
    for (std::size_t k = 0; k < phi.size(); ++k) m[k] += w * phi[k](s.positions[j]);
  }
  return m;
}

std::size_t matching_snapshot(const std::vector<PlaneSnapshot>& snaps, double t) {
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    if (std::abs(snaps[s].t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return s;
  }
  return snaps.size();
}

}  // namespace

LimitComparison compare_to_limit(const ExteriorRun& ext, const PlaneRun& plane, bool excise) {
  const ExteriorSimConfig& ec = ext.config;
  if (ec.params.alpha != plane.config.alpha || ec.params.gamma != plane.config.gamma) {
    throw DomainError("compare: alpha and gamma must agree between the runs");
  }
  if (!same_vorticity(ec.q0, plane.config.q0)) {
    throw DomainError("compare: the runs start from different initial data");
  }
  const std::vector<TestFunction> phi = test_dictionary(plane);
  LimitComparison out;
  for (std::size_t s = 0; s < ext.snapshots.size(); ++s) {
    const double t = ext.snapshots[s].t;
    const std::size_t ps = matching_snapshot(plane.snapshots, t);
    if (ps == plane.snapshots.size()) continue;
    const PolarField q = ext.field_at(s);
    const std::vector<double> pm = plane_moments(plane, ps, phi, excise ? ec.params.eps : 0.0);
    double e = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) e += std::abs(q.integrate(phi[k]) - pm[k]);
    out.t.push_back(t);
    out.e.push_back(e);
  }
  if (out.t.empty() || out.t.front() != 0.0) {
    throw DomainError("compare: the runs share no snapshot times (including t = 0)");
  }
  out.floor = out.e.front();
  return out;
}

LimitComparison compare_plane_runs(const PlaneRun& a, const PlaneRun& b) {
  const std::vector<TestFunction> phi = test_dictionary(a);
  LimitComparison out;
  for (std::size_t s = 0; s < a.snapshots.size(); ++s) {
    const std::size_t ps = matching_snapshot(b.snapshots, a.snapshots[s].t);
    if (ps == b.snapshots.size()) continue;
    const std::vector<double> ma = plane_moments(a, s, phi, 0.0);
    const std::vector<double> mb = plane_moments(b, ps, phi, 0.0);
    double e = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) e += std::abs(ma[k] - mb[k]);
    out.t.push_back(a.snapshots[s].t);
    out.e.push_back(e);
  }
  if (out.t.empty()) throw DomainError("compare: the runs share no snapshot times");
  out.floor = out.e.front();
  return out;
}

}  // namespace alphadisk
