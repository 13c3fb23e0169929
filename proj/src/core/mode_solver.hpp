#pragma once

#include <complex>
#include <vector>

#include "core/kernels.hpp"
#include "core/polar_grid.hpp"
#include "core/radial_fd.hpp"

namespace alphadisk {

using ComplexProfile = std::vector<std::complex<double>>;

// Velocity in azimuthal modes: u(r, theta) = sum_{|n|<=N} (u_r, u_theta)_n(r) e^{in theta}
// with mode -n the conjugate of mode n; only n = 0..N are stored.
struct ModeField {
  PolarGrid grid;
  std::vector<double> r;
  int n_modes = 0;
  FilterParams params;  // params.mass is the discrete mass of the source
  std::vector<ComplexProfile> u_r;
  std::vector<ComplexProfile> u_theta;
};

// Velocity components on the polar grid, radius-major like PolarField.
struct GridVelocity {
  int n_r = 0;
  int n_theta = 0;
  std::vector<double> u_r;
  std::vector<double> u_theta;
};

// Per-mode radial solvers for one grid and filter length. Factorizations and
// the homogeneous solutions that enforce no-slip are built once and reused, so
// a solver can be applied to many sources (e.g. every time step).
//
// Mode 0 is solved in velocity form:
//   u - alpha (u'' + u'/r - u/r^2) = (1/r) (int_eps^r s q_0 ds + gamma / 2 pi),
//   u(eps) = 0, (u - beta/(2 pi r)) proportional to K_1(r/sqrt(alpha)) at r_max.
// Modes n >= 1 use the stream function: (1 - alpha Delta_n) chi = q_n,
// Delta_n psi = chi, psi(eps) = psi'(eps) = 0, decaying closures at r_max.
// Sources must vanish near r_max for the closures to be exact.
class ModeSolver {
 public:
  ModeSolver(const PolarGrid& grid, double alpha, int n_modes);

  ModeField filtered_velocity(const PolarField& q, double gamma) const;
  ModeField filtered_velocity(const ModeCoefficients& q, double gamma) const;

  // Exterior Dirichlet Poisson problem xi'' + xi'/r - n^2 xi / r^2 = rhs,
  // xi(eps) = 0; decaying (n != 0) or bounded (n = 0) at infinity.
  ComplexProfile exterior_poisson(int n, const ComplexProfile& rhs) const;

  // ||grad Delta^{-1} q||_{L^2} over the annulus from the mode coefficients of q.
  double poisson_gradient_norm(const ModeCoefficients& q) const;

  const std::vector<double>& radii() const { return r_; }
  const PolarGrid& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  int n_modes() const { return n_modes_; }

 private:
  struct ModeCache {
    RadialOperator helmholtz;
    RadialOperator laplace;
    std::vector<double> chi_h;
    std::vector<double> psi_h;
    double dpsi_h = 0.0;
    double kappa = 0.0;
  };

  PolarGrid grid_;
  std::vector<double> r_;
  double alpha_;
  int n_modes_;
  std::vector<ModeCache> cache_;       // index n, entry 0 unused except helmholtz
  std::vector<RadialOperator> poisson_;  // index n
};

ModeField filtered_velocity(const PolarField& q, const FilterParams& params, int n_modes);

// Cartesian velocity at arbitrary points in [eps, r_max]; cubic Lagrange
// interpolation of each mode profile in r, exact synthesis in theta.
std::vector<Point2> eval_velocity(const ModeField& u, const std::vector<Point2>& points);

GridVelocity velocity_on_grid(const ModeField& u);

// Discrete (1 - alpha Delta) u for mode 0 at node i (interior), azimuthal.
double unfiltered_azimuthal(const ModeField& u, std::size_t i);

}  // namespace alphadisk
