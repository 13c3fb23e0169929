#pragma once

#include <cmath>
#include <vector>

namespace alphadisk {

// Filter length squared, obstacle radius, circulation of the unfiltered
// velocity on the obstacle, and total potential-vorticity mass. The harmonic
// part of the exterior Biot-Savart law is weighted by beta() = gamma + mass.
struct FilterParams {
  double alpha = 1.0;
  double eps = 0.0;
  double gamma = 0.0;
  double mass = 0.0;

  double beta() const { return gamma + mass; }
  double sqrt_alpha() const { return std::sqrt(alpha); }
  void validate() const;
};

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  // x^perp = (-x2, x1)
  Point2 perp() const { return {-x2, x1}; }
  double norm() const { return std::hypot(x1, x2); }
  double norm2() const { return x1 * x1 + x2 * x2; }

  Point2 operator+(Point2 o) const { return {x1 + o.x1, x2 + o.x2}; }
  Point2 operator-(Point2 o) const { return {x1 - o.x1, x2 - o.x2}; }
  Point2 operator-() const { return {-x1, -x2}; }
  Point2 operator*(double s) const { return {x1 * s, x2 * s}; }
  Point2& operator+=(Point2 o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
  bool operator==(const Point2&) const = default;
};

inline Point2 operator*(double s, Point2 p) { return p * s; }
inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

// Jacobian d_j K_i stored as m[i][j].
struct Mat2 {
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double trace() const { return m[0][0] + m[1][1]; }
  double frobenius() const {
    return std::sqrt(m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] +
                     m[1][1] * m[1][1]);
  }
};

// Radial profile of the Bessel potential G_alpha = K_0(r/sqrt(alpha))/(2 pi alpha),
// the fundamental solution of (1 - alpha Laplacian) with unit mass.
double g_alpha(double r, const FilterParams& p);

// int_0^r s g_alpha(s) ds = (1 - rho K_1(rho)) / (2 pi),  rho = r / sqrt(alpha).
double bessel_mass(double r, const FilterParams& p);

// Azimuthal component k(r) of K^alpha = k(|x|) x^perp / |x|.
double k_theta(double r, const FilterParams& p);
double k_theta_derivative(double r, const FilterParams& p);

// H = x^perp / (2 pi |x|^2).
Point2 harmonic_field(Point2 x);

// Smooth radial cutoff: 0 on r <= 1, 1 on r >= 2.
double cutoff_eta(double r);
double cutoff_eta_d1(double r);
double cutoff_eta_d2(double r);

// H_cut = eta(|x|) H(x).
Point2 cutoff_field(Point2 x);

// Filtered Biot-Savart kernel K^alpha = G_alpha * H; K^alpha(0) = 0.
Point2 k_alpha(Point2 x, const FilterParams& p);
Mat2 grad_k_alpha(Point2 x, const FilterParams& p);

// g_alpha(r) - 2/r^2 int_0^r s g_alpha(s) ds: the bounded factor of both
// strain combinations of grad K^alpha.
double strain_factor(double r, const FilterParams& p);

// Biot-Savart kernel of the Dirichlet Laplacian exterior to the disk of
// radius eps (direct term minus the reflected one at eps^2 y / |y|^2).
Point2 image_kernel(Point2 x, Point2 y, double eps);

// Fast evaluation of K^alpha for large particle sums. Tabulates
// (1 - rho K_1(rho)) with cubic Hermite interpolation on the mid range and
// falls back to the series near 0; agrees with k_alpha to ~1e-13 relative.
class KernelProfile {
 public:
  explicit KernelProfile(double alpha);

  // f(r) with K^alpha(x) = x^perp f(|x|); argument is r^2.
  double factor_from_r2(double r2) const;

  Point2 velocity(Point2 x) const { return x.perp() * factor_from_r2(x.norm2()); }
  double alpha() const { return alpha_; }

 private:
  double phi(double rho) const;

  double alpha_;
  double inv_two_pi_alpha_;
  double inv_h_;
  std::vector<double> value_;
  std::vector<double> slope_;
};

}  // namespace alphadisk
