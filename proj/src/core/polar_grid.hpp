#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "core/kernels.hpp"

namespace alphadisk {

// Radial nodes on [eps, r_max] times n_theta equispaced angles.
//
// With r_join == 0 the radial nodes are r_i = eps + (r_max - eps)(i/(n_r-1))^grading.
// With r_join > 0 the nodes are a graded block on [eps, r_join] followed by
// a uniform block of spacing (r_max - r_join)/(n_r - 1) on [r_join, r_max]; the
// outer block then does not depend on eps and n_r counts its nodes only.
struct PolarGrid {
  double eps = 0.1;
  double r_max = 10.0;
  int n_r = 256;
  double grading = 2.0;
  int n_theta = 64;
  double r_join = 0.0;

  void validate() const;
  std::vector<double> radii() const;
  double theta(int j) const;
};

// Scalar field q(r_i, theta_j), stored radius-major: values[i * n_theta + j].
struct PolarField {
  PolarGrid grid;
  std::vector<double> r;
  std::vector<double> values;

  explicit PolarField(const PolarGrid& g);
  PolarField(const PolarGrid& g, const std::function<double(Point2)>& f);

  int n_r() const { return static_cast<int>(r.size()); }
  int n_theta() const { return grid.n_theta; }
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n_theta + j]; }
  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * grid.n_theta + j];
  }
  Point2 point(int i, int j) const;

  // Trapezoid in r (weight r) times the periodic rule in theta.
  double mass() const;
  double max_abs() const;
  double integrate(const std::function<double(Point2)>& phi) const;
};

// coeffs[n][i] = (1/n_theta) sum_j q_ij e^{-i n theta_j},  n = 0..N.
struct ModeCoefficients {
  int n_modes = 0;
  std::vector<std::vector<std::complex<double>>> coeffs;
  double dropped_fraction = 0.0;  // energy beyond mode N over total
  bool aliasing_warning = false;
};

constexpr double kAliasingThreshold = 1e-8;

ModeCoefficients analyze(const PolarField& q, int n_modes);

// Inverse of analyze on n_theta angles (modes above N treated as zero).
std::vector<std::vector<double>> synthesize(
    const std::vector<std::vector<std::complex<double>>>& coeffs, int n_theta);

}  // namespace alphadisk
