#pragma once

#include <string>
#include <vector>

#include "core/kernels.hpp"
#include "core/vorticity.hpp"

namespace alphadisk {

// Vortex blobs for the whole-plane system with a fixed point vortex of
// strength gamma at the origin. Weights and carried values never change.
struct ParticleEnsemble {
  std::vector<Point2> positions;
  std::vector<double> weights;
  std::vector<double> q_values;
  FilterParams params;  // eps = 0

  std::size_t size() const { return positions.size(); }
  double mass() const;
};

enum class Lattice { cartesian, polar };

// Particles at the centres of a lattice of spacing h where q0 != 0; each
// carries q0 times its cell area. The polar lattice (rings of spacing h with
// one common, aligned angular count) keeps rotationally symmetric data exactly
// symmetric and is only meaningful for ring profiles.
ParticleEnsemble init_particles(const VorticitySpec& q0, double h, const FilterParams& params,
                                Lattice lattice = Lattice::cartesian);

// Blob-sum velocity field. Pairwise sums use the tabulated kernel.
class PlaneVelocity {
 public:
  explicit PlaneVelocity(double alpha);

  // u(x) = sum_j w_j K^alpha(x - x_j) + gamma K^alpha(x)
  Point2 at(const ParticleEnsemble& e, Point2 x) const;

  // Velocity of every particle at the given positions; `blob` (optional)
  // receives the part without the point vortex.
  void particles(const ParticleEnsemble& e, const std::vector<Point2>& x,
                 std::vector<Point2>& u, std::vector<Point2>* blob = nullptr) const;

 private:
  KernelProfile kernel_;
};

// Classical RK4 step; throws NumericalError on a non-finite position.
void rk4_step(const PlaneVelocity& field, ParticleEnsemble& e, double dt);

struct PlaneSimConfig {
  double alpha = 1.0;
  double gamma = 1.0;
  double dt = 0.0;  // 0 selects 5e-3 turnover times of the initial field
  double t_end = 1.0;
  double h = 0.02;
  int snapshot_stride = 10;
  Lattice lattice = Lattice::cartesian;
  VorticitySpec q0;

  void validate() const;
};

struct PlaneDiagnostics {
  double t = 0.0;
  double mass = 0.0;
  double max_radius = 0.0;
  double angular_impulse = 0.0;  // sum w |x|^2
  double max_blob_speed = 0.0;
};

struct PlaneSnapshot {
  double t = 0.0;
  std::vector<Point2> positions;
};

struct PlaneRun {
  PlaneSimConfig config;
  double dt = 0.0;  // resolved step
  int steps = 0;
  ParticleEnsemble initial;
  std::vector<PlaneDiagnostics> diagnostics;  // one row per step, t = 0 first
  std::vector<PlaneSnapshot> snapshots;

  const ParticleEnsemble& ensemble_at(std::size_t snapshot, ParticleEnsemble& scratch) const;
};

double default_plane_dt(const PlaneVelocity& field, const ParticleEnsemble& e,
                        const VorticitySpec& q0);

// On a numerical abort, `partial` (optional) receives the steps completed so far.
PlaneRun run_plane(const PlaneSimConfig& config, PlaneRun* partial = nullptr);

struct GapSeries {
  std::vector<double> t;
  std::vector<double> gap;
};

// ||grad Delta^{-1} (q_a - q_b)||_{L^2} at every common snapshot, with both
// ensembles deposited by a tensor hat of half-width spread * grid_h on one
// periodic box covering all snapshots of both runs (padded by 25%).
// grid_h = 0 selects a quarter of the particle lattice spacing; a grid
// commensurate with the lattice aliases the lattice motion into the gap.
GapSeries stability_gap(const PlaneRun& a, const PlaneRun& b, double grid_h = 0.0,
                        int spread = 8);

}  // namespace alphadisk
