#pragma once

#include <memory>
#include <vector>

#include "core/mode_solver.hpp"
#include "core/plane_solver.hpp"
#include "core/polar_grid.hpp"
#include "core/vorticity.hpp"

namespace alphadisk {

enum class Interpolation { bilinear, cubic };

struct ExteriorSimConfig {
  FilterParams params{1.0, 0.1, 1.0, 0.0};  // alpha, eps, gamma; mass comes from q0
  // Graded block on [eps, 0.5], then spacing 0.0125 out to r_max = 3.
  PolarGrid grid{0.1, 3.0, 201, 2.0, 256, 0.5};  // grid.eps must equal params.eps
  int n_modes = 32;
  double dt = 0.01;
  double t_end = 1.0;
  int snapshot_stride = 10;
  VorticitySpec q0;
  Interpolation interpolation = Interpolation::cubic;
  // Second transport pass with the velocity averaged over the step.
  bool corrector = true;
  // Abort when more feet than this land inside the obstacle in one step.
  int max_foot_violations = 64;

  void validate() const;
};

struct ExteriorDiagnostics {
  double t = 0.0;
  double mass = 0.0;
  double q_max = 0.0;
  double q_min = 0.0;
  double support_radius = 0.0;
  double max_speed = 0.0;
  double max_blob_speed = 0.0;  // |u - beta w3|
  double cfl = 0.0;
  long foot_violations = 0;     // cumulative
  double dropped_fraction = 0.0;
};

struct ExteriorSnapshot {
  double t = 0.0;
  std::vector<double> values;
};

struct ExteriorRun {
  ExteriorSimConfig config;
  int steps = 0;
  double dt = 0.0;
  std::vector<double> r;  // radial nodes
  std::vector<ExteriorDiagnostics> diagnostics;
  std::vector<ExteriorSnapshot> snapshots;

  PolarField field_at(std::size_t snapshot) const;
};

// Interpolates a grid field at polar coordinates (r, theta); cubic mode is
// clamped to the enclosing cell's values, so it never creates new extrema.
class PolarInterpolator {
 public:
  PolarInterpolator(const std::vector<double>& r, int n_theta, Interpolation mode);
  double operator()(const std::vector<double>& values, double r, double theta) const;
  // Unclamped cubic (used for the smooth velocity field).
  double smooth(const std::vector<double>& values, double r, double theta) const;

 private:
  struct Stencil {
    std::size_t i[4];
    int j[4];
    double wr[4];
    double wt[4];
    int cell_r;  // offset of r_k in the stencil
  };
  Stencil stencil(double r, double theta) const;

  std::vector<double> r_;
  int n_theta_;
  Interpolation mode_;
};

// One semi-Lagrangian step of length dt: q_new(x) = q(foot(x)) with feet from
// backward RK2 in polar coordinates through the given velocity.
struct StepStats {
  long foot_violations = 0;
};
void transport_step(const PolarField& q, const GridVelocity& u, double dt,
                    const PolarInterpolator& interp, PolarField& out, StepStats& stats);

// On a numerical abort, `partial` (optional) receives the steps completed so far.
ExteriorRun run_exterior(const ExteriorSimConfig& config, ExteriorRun* partial = nullptr);

struct PicardConfig {
  int n_iters = 6;
  double t0 = 0.5;
  double dt = 0.0;  // 0 uses the simulation dt
};

struct PicardResult {
  std::vector<double> d;      // d_1..d_n
  std::vector<double> ratio;  // d_{n+1}/d_n, NaN when d_n is at the noise floor
  double noise_floor = 0.0;
};

PicardResult picard(const ExteriorSimConfig& config, const PicardConfig& picard);

// Weak-* proxy: e(t) = sum_k |int q_eps phi_k - int q phi_k| over 12 cos^2
// test functions on a 4 x 3 lattice covering the plane run's reachable box.
struct TestFunction {
  Point2 centre;
  double radius = 0.0;
  double operator()(Point2 x) const;
};

struct LimitComparison {
  std::vector<double> t;
  std::vector<double> e;
  double floor = 0.0;  // e(0)
};

std::vector<TestFunction> test_dictionary(const PlaneRun& plane);

LimitComparison compare_to_limit(const ExteriorRun& ext, const PlaneRun& plane,
                                 bool excise = false);

// Same metric between two plane runs (dictionary from the first).
LimitComparison compare_plane_runs(const PlaneRun& a, const PlaneRun& b);

}  // namespace alphadisk
