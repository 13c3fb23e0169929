#pragma once

#include <vector>

#include "core/kernels.hpp"
#include "core/specfun.hpp"

namespace alphadisk {

// Azimuthal velocity profile u_theta(r) of a field u = u_theta(|x|) x^perp/|x|.
struct AzimuthalProfile {
  std::vector<double> grid;
  std::vector<double> values;
};

struct BoundaryConstants {
  double a_eps = 0.0;
  double b_eps = 0.0;
  double h1_energy = 0.0;
};

// Azimuthal value of w3 = (1 - alpha Delta)^{-1} H in the exterior of the
// disk with no-slip at eps:
//   1/(2 pi r) - K_1(r/sqrt(alpha)) / (2 pi eps K_1(eps/sqrt(alpha))).
double filtered_harmonic(double r, const FilterParams& p);
double filtered_harmonic_derivative(double r, const FilterParams& p);

// w4 = w3 - K^alpha, written as D K_1(r/sqrt(alpha)) to avoid cancellation.
double w4_profile(double r, const FilterParams& p);
double w4_derivative(double r, const FilterParams& p);

// Neumann datum -k(eps)/alpha and boundary value of F = curl w4.
double a_eps(const FilterParams& p);
double b_eps(const FilterParams& p);

enum class EnergyMode { identity, quadrature };

// ||w4||^2 + alpha ||grad w4||^2 over |x| > eps. Identity mode evaluates
// 2 pi alpha^2 eps a ((alpha/eps) a - b); quadrature mode integrates
// 2 pi int (u^2 + alpha (u'^2 + u^2/r^2)) r dr with u = w3 - k.
double w4_h1_energy(const FilterParams& p, EnergyMode mode,
                    const QuadratureSpec& spec = {});

BoundaryConstants boundary_constants(const FilterParams& p);

// F = curl w4 for r >= eps, extended by the constant b_eps inside the disk.
double f_extension(double r, const FilterParams& p);

struct CutoffGrid {
  double h_outer = 2e-3;  // uniform spacing beyond r = 1
  double grading = 2.0;   // exponent of the graded block [eps, 1]
  double r_max = 0.0;     // 0 selects 8 max(1, 30 sqrt(alpha))
};

struct CutoffCorrection {
  AzimuthalProfile profile;
  double h1_norm = 0.0;
  double residual = 0.0;  // max-norm residual of the discrete equations
  double r_max = 0.0;
};

// Azimuthal source alpha (Delta H_cut)_theta = alpha (eta'' - eta'/r) / (2 pi r).
double cutoff_source(double r, const FilterParams& p);

// Solves w - alpha (w'' + w'/r - w/r^2) = alpha (Delta H_cut)_theta with
// w(eps) = 0 and w(r_max) = 0. Requires eps < 1.
CutoffCorrection cutoff_correction(const FilterParams& p, const CutoffGrid& grid = {});

}  // namespace alphadisk
