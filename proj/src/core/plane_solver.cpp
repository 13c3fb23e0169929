#include "core/plane_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/fft.hpp"

namespace alphadisk {

double ParticleEnsemble::mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

ParticleEnsemble init_particles(const VorticitySpec& q0, double h, const FilterParams& params,
                                Lattice lattice) {
  q0.validate();
  params.validate();
  if (!(h > 0.0)) throw DomainError("init_particles: lattice spacing must be > 0");
  ParticleEnsemble e;
  e.params = params;
  e.params.eps = 0.0;
  if (q0.kind == VorticitySpec::Kind::zero) return e;

  auto add = [&](Point2 x, double area) {
    const double q = q0.value(x);
    if (q == 0.0) return;
    e.positions.push_back(x);
    e.weights.push_back(q * area);
    e.q_values.push_back(q);
  };

  if (lattice == Lattice::cartesian) {
    double x_lo, x_hi, y_lo, y_hi;
    if (q0.kind == VorticitySpec::Kind::bump) {
      x_lo = q0.centre.x1 - q0.radius;
      x_hi = q0.centre.x1 + q0.radius;
      y_lo = q0.centre.x2 - q0.radius;
      y_hi = q0.centre.x2 + q0.radius;
    } else {
      x_lo = y_lo = -q0.outer_radius();
      x_hi = y_hi = q0.outer_radius();
    }
    // Cell centres of the global lattice h Z^2 + h/2.
    const long i0 = static_cast<long>(std::floor(x_lo / h)) - 1;
    const long i1 = static_cast<long>(std::ceil(x_hi / h)) + 1;
    const long j0 = static_cast<long>(std::floor(y_lo / h)) - 1;
    const long j1 = static_cast<long>(std::ceil(y_hi / h)) + 1;
    for (long i = i0; i <= i1; ++i) {
      for (long j = j0; j <= j1; ++j) add({(i + 0.5) * h, (j + 0.5) * h}, h * h);
    }
  } else {
    const double r_in = q0.inner_radius();
    const double r_out = q0.outer_radius();
    const int rings = std::max(1, static_cast<int>(std::ceil((r_out - r_in) / h)));
    const double dr = (r_out - r_in) / rings;
    const int count = std::max(8, static_cast<int>(std::ceil(
                                      2.0 * std::numbers::pi * 0.5 * (r_in + r_out) / h)));
    const double dth = 2.0 * std::numbers::pi / count;
    for (int k = 0; k < rings; ++k) {
      const double r = r_in + (k + 0.5) * dr;
      for (int j = 0; j < count; ++j) {
        add({r * std::cos(j * dth), r * std::sin(j * dth)}, r * dr * dth);
      }
    }
  }
  if (e.positions.empty()) {
    throw DomainError("init_particles: lattice misses the support of q0 (h too large)");
  }
  return e;
}

PlaneVelocity::PlaneVelocity(double alpha) : kernel_(alpha) {}

Point2 PlaneVelocity::at(const ParticleEnsemble& e, Point2 x) const {
  Point2 u{0.0, 0.0};
  for (std::size_t j = 0; j < e.size(); ++j) {
    u += kernel_.velocity(x - e.positions[j]) * e.weights[j];
  }
  return u + kernel_.velocity(x) * e.params.gamma;
}

void PlaneVelocity::particles(const ParticleEnsemble& e, const std::vector<Point2>& x,
                              std::vector<Point2>& u, std::vector<Point2>* blob) const {
  const std::size_t n = x.size();
  u.assign(n, Point2{0.0, 0.0});
  const std::vector<double>& w = e.weights;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 xi = x[i];
    Point2 ui = u[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d1 = xi.x1 - x[j].x1;
      const double d2 = xi.x2 - x[j].x2;
      const double f = kernel_.factor_from_r2(d1 * d1 + d2 * d2);
      // K(d) = (-d2, d1) f, antisymmetric in the pair
      const double k1 = -d2 * f, k2 = d1 * f;
      ui.x1 += w[j] * k1;
      ui.x2 += w[j] * k2;
      u[j].x1 -= w[i] * k1;
      u[j].x2 -= w[i] * k2;
    }
    u[i] = ui;
  }
  if (blob) *blob = u;
  const double gamma = e.params.gamma;
  if (gamma != 0.0) {
    for (std::size_t i = 0; i < n; ++i) u[i] += kernel_.velocity(x[i]) * gamma;
  }
}

namespace {

void check_positions(const std::vector<Point2>& x) {
  for (const Point2& p : x) {
    if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
      throw NumericalError("plane solver: non-finite particle position");
    }
  }
}

// Completes an RK4 step whose first stage k1 is already known.
void rk4_finish(const PlaneVelocity& field, ParticleEnsemble& e, double dt,
                const std::vector<Point2>& k1) {
  const std::size_t n = e.size();
  std::vector<Point2> x(n), k2, k3, k4;
  const std::vector<Point2>& x0 = e.positions;
  for (std::size_t i = 0; i < n; ++i) x[i] = x0[i] + k1[i] * (0.5 * dt);
  field.particles(e, x, k2);
  for (std::size_t i = 0; i < n; ++i) x[i] = x0[i] + k2[i] * (0.5 * dt);
  field.particles(e, x, k3);
  for (std::size_t i = 0; i < n; ++i) x[i] = x0[i] + k3[i] * dt;
  field.particles(e, x, k4);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = x0[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
  }
  check_positions(x);
  e.positions = std::move(x);
}

PlaneDiagnostics diagnose(const ParticleEnsemble& e, const std::vector<Point2>& blob, double t) {
  PlaneDiagnostics d;
  d.t = t;
  d.mass = e.mass();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double r2 = e.positions[i].norm2();
    d.max_radius = std::max(d.max_radius, std::sqrt(r2));
    d.angular_impulse += e.weights[i] * r2;
    d.max_blob_speed = std::max(d.max_blob_speed, blob[i].norm());
  }
  return d;
}

}  // namespace

void rk4_step(const PlaneVelocity& field, ParticleEnsemble& e, double dt) {
  std::vector<Point2> k1;
  field.particles(e, e.positions, k1);
  rk4_finish(field, e, dt, k1);
}

void PlaneSimConfig::validate() const {
  if (!(alpha > 0.0)) throw DomainError("plane config: alpha must be > 0");
  if (!std::isfinite(gamma)) throw DomainError("plane config: gamma must be finite");
  if (!(dt >= 0.0)) throw DomainError("plane config: dt must be >= 0 (0 = automatic)");
  if (!(t_end >= 0.0)) throw DomainError("plane config: t_end must be >= 0");
  if (dt > 0.0 && t_end > 0.0 && t_end < dt) {
    throw DomainError("plane config: t_end must be >= dt");
  }
  if (!(h > 0.0)) throw DomainError("plane config: h must be > 0");
  if (snapshot_stride < 1) throw DomainError("plane config: snapshot_stride must be >= 1");
  q0.validate();
}

double default_plane_dt(const PlaneVelocity& field, const ParticleEnsemble& e,
                        const VorticitySpec& q0) {
  std::vector<Point2> u;
  field.particles(e, e.positions, u);
  double umax = 0.0;
  for (const Point2& v : u) umax = std::max(umax, v.norm());
  const double length = q0.kind == VorticitySpec::Kind::ring ? q0.ring_width : q0.radius;
  if (!(umax > 0.0)) return 1e-2;
  return 5e-3 * length / umax;
}

const ParticleEnsemble& PlaneRun::ensemble_at(std::size_t snapshot,
                                              ParticleEnsemble& scratch) const {
  scratch = initial;
  scratch.positions = snapshots.at(snapshot).positions;
  return scratch;
}

PlaneRun run_plane(const PlaneSimConfig& config, PlaneRun* partial) {
  config.validate();
  FilterParams params;
  params.alpha = config.alpha;
  params.gamma = config.gamma;
  PlaneRun run;
  run.config = config;
  run.initial = init_particles(config.q0, config.h, params, config.lattice);
  run.initial.params.mass = run.initial.mass();
  const PlaneVelocity field(config.alpha);

  double dt = config.dt > 0.0 ? config.dt : default_plane_dt(field, run.initial, config.q0);
  int steps = 0;
  if (config.t_end > 0.0) {
    steps = static_cast<int>(std::ceil(config.t_end / dt - 1e-9));
    dt = config.t_end / steps;
  }
  run.dt = dt;
  run.steps = steps;

  ParticleEnsemble e = run.initial;
  std::vector<Point2> u, blob;
  try {
    for (int s = 0; s <= steps; ++s) {
      const double t = s * dt;
      field.particles(e, e.positions, u, &blob);
      run.diagnostics.push_back(diagnose(e, blob, t));
      if (s % config.snapshot_stride == 0 || s == steps) {
        run.snapshots.push_back({t, e.positions});
      }
      if (s < steps) rk4_finish(field, e, dt, u);
    }
  } catch (...) {
    if (partial != nullptr) *partial = std::move(run);
    throw;
  }
  return run;
}

namespace {

struct Box {
  double x0, y0, lx, ly;
  int n0, n1;  // nodes along x and y
  double h;
};

// Tensor hat of half-width `spread` grid cells; sums to the particle weight.
void deposit(const std::vector<Point2>& x, const std::vector<double>& w, double sign,
             const Box& b, int spread, std::vector<double>& grid) {
  const double inv = 1.0 / (b.h * b.h * spread * spread);
  std::vector<double> wx(2 * spread), wy(2 * spread);
  for (std::size_t p = 0; p < x.size(); ++p) {
    const double sx = (x[p].x1 - b.x0) / b.h;
    const double sy = (x[p].x2 - b.y0) / b.h;
    const int i = static_cast<int>(std::floor(sx)) - spread + 1;
    const int j = static_cast<int>(std::floor(sy)) - spread + 1;
    for (int k = 0; k < 2 * spread; ++k) {
      wx[k] = std::max(0.0, 1.0 - std::abs(i + k - sx) / spread);
      wy[k] = std::max(0.0, 1.0 - std::abs(j + k - sy) / spread);
    }
    const double q = sign * w[p] * inv;
    for (int a = 0; a < 2 * spread; ++a) {
      const int ii = (((i + a) % b.n0) + b.n0) % b.n0;
      for (int c = 0; c < 2 * spread; ++c) {
        const int jj = (((j + c) % b.n1) + b.n1) % b.n1;
        grid[static_cast<std::size_t>(ii) * b.n1 + jj] += q * wx[a] * wy[c];
      }
    }
  }
}

}  // namespace

GapSeries stability_gap(const PlaneRun& a, const PlaneRun& b, double grid_h, int spread) {
  if (spread < 1) throw DomainError("stability_gap: spread must be >= 1");
  if (a.config.alpha != b.config.alpha || a.config.gamma != b.config.gamma) {
    throw DomainError("stability_gap: runs differ in alpha or gamma");
  }
  if (a.snapshots.size() != b.snapshots.size()) {
    throw DomainError("stability_gap: runs have different snapshot counts");
  }
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    if (std::abs(a.snapshots[k].t - b.snapshots[k].t) > 1e-12 * (1.0 + a.snapshots[k].t)) {
      throw DomainError("stability_gap: snapshot times differ");
    }
  }
  const double h = grid_h > 0.0 ? grid_h : 0.25 * std::max(a.config.h, b.config.h);

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const PlaneRun* run : {&a, &b}) {
    for (const PlaneSnapshot& s : run->snapshots) {
      for (const Point2& p : s.positions) {
        xmin = std::min(xmin, p.x1);
        xmax = std::max(xmax, p.x1);
        ymin = std::min(ymin, p.x2);
        ymax = std::max(ymax, p.x2);
      }
    }
  }
  GapSeries out;
  if (!std::isfinite(xmin)) {
    for (const PlaneSnapshot& s : a.snapshots) {
      out.t.push_back(s.t);
      out.gap.push_back(0.0);
    }
    return out;
  }
  const double padx = 0.25 * std::max(xmax - xmin, 4.0 * h) + spread * h;
  const double pady = 0.25 * std::max(ymax - ymin, 4.0 * h) + spread * h;
  Box box;
  box.h = h;
  box.x0 = xmin - padx;
  box.y0 = ymin - pady;
  box.n0 = 2 * static_cast<int>(std::ceil((xmax - xmin + 2 * padx) / (2 * h)));
  box.n1 = 2 * static_cast<int>(std::ceil((ymax - ymin + 2 * pady) / (2 * h)));
  box.lx = box.n0 * h;
  box.ly = box.n1 * h;

  const RealFft2d fft(box.n0, box.n1);
  const int m1 = box.n1 / 2 + 1;
  const double two_pi = 2.0 * std::numbers::pi;
  const double norm = 1.0 / (static_cast<double>(box.n0) * box.n1);
  std::vector<double> grid, other;
  std::vector<std::complex<double>> spec;
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    // Separate grids so that identical ensembles cancel exactly.
    grid.assign(static_cast<std::size_t>(box.n0) * box.n1, 0.0);
    other.assign(grid.size(), 0.0);
    deposit(a.snapshots[k].positions, a.initial.weights, 1.0, box, spread, grid);
    deposit(b.snapshots[k].positions, b.initial.weights, 1.0, box, spread, other);
    for (std::size_t c = 0; c < grid.size(); ++c) grid[c] -= other[c];
    fft.forward(grid, spec);
    double s = 0.0;
    for (int i = 0; i < box.n0; ++i) {
      const int mi = i <= box.n0 / 2 ? i : i - box.n0;
      const double kx = two_pi * mi / box.lx;
      for (int j = 0; j < m1; ++j) {
        if (i == 0 && j == 0) continue;
        const double ky = two_pi * j / box.ly;
        const double mult = (j == 0 || j == box.n1 / 2) ? 1.0 : 2.0;
        s += mult * std::norm(spec[static_cast<std::size_t>(i) * m1 + j] * norm) /
             (kx * kx + ky * ky);
      }
    }
    out.t.push_back(a.snapshots[k].t);
    out.gap.push_back(std::sqrt(box.lx * box.ly * s));
  }
  return out;
}

}  // namespace alphadisk
