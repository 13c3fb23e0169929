#include "core/kernels.hpp"

#include <numbers>
#include <string>

#include "core/error.hpp"
#include "core/specfun.hpp"

namespace alphadisk {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void FilterParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("FilterParams: alpha must be positive and finite");
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("FilterParams: eps must be >= 0 and finite");
  }
  if (!std::isfinite(gamma) || !std::isfinite(mass)) {
    throw DomainError("FilterParams: gamma and mass must be finite");
  }
}

double g_alpha(double r, const FilterParams& p) {
  if (!(r > 0.0)) throw DomainError("g_alpha: r must be > 0");
  return bessel_k(0, r / p.sqrt_alpha()) / (kTwoPi * p.alpha);
}

double bessel_mass(double r, const FilterParams& p) {
  if (!(r >= 0.0)) throw DomainError("bessel_mass: r must be >= 0");
  if (std::isinf(r)) return 1.0 / kTwoPi;
  return one_minus_z_k1(r / p.sqrt_alpha()) / kTwoPi;
}

double k_theta(double r, const FilterParams& p) {
  if (r == 0.0) return 0.0;
  return bessel_mass(r, p) / r;
}

double k_theta_derivative(double r, const FilterParams& p) {
  if (!(r > 0.0)) throw DomainError("k_theta_derivative: r must be > 0");
  return g_alpha(r, p) - bessel_mass(r, p) / (r * r);
}

Point2 harmonic_field(Point2 x) {
  const double r2 = x.norm2();
  if (r2 == 0.0) throw DomainError("harmonic_field: undefined at the origin");
  return x.perp() * (1.0 / (kTwoPi * r2));
}

namespace {

// psi(s) = exp(-1/s) for s > 0 and its first two derivatives.
double bump_psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double bump_psi_d1(double s) { return s > 0.0 ? bump_psi(s) / (s * s) : 0.0; }
double bump_psi_d2(double s) {
  if (s <= 0.0) return 0.0;
  const double s2 = s * s;
  return bump_psi(s) * (1.0 / (s2 * s2) - 2.0 / (s2 * s));
}

}  // namespace

double cutoff_eta(double r) {
  if (r <= 1.0) return 0.0;
  if (r >= 2.0) return 1.0;
  const double a = bump_psi(r - 1.0);
  const double b = bump_psi(2.0 - r);
  return a / (a + b);
}

double cutoff_eta_d1(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const double a = bump_psi(r - 1.0), b = bump_psi(2.0 - r);
  const double da = bump_psi_d1(r - 1.0), db = -bump_psi_d1(2.0 - r);
  const double d = a + b;
  return (da * b - a * db) / (d * d);
}

double cutoff_eta_d2(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  const double a = bump_psi(r - 1.0), b = bump_psi(2.0 - r);
  const double da = bump_psi_d1(r - 1.0), db = -bump_psi_d1(2.0 - r);
  const double dda = bump_psi_d2(r - 1.0), ddb = bump_psi_d2(2.0 - r);
  const double d = a + b;
  const double n = da * b - a * db;
  const double dn = dda * b - a * ddb;
  return (dn * d - 2.0 * n * (da + db)) / (d * d * d);
}

Point2 cutoff_field(Point2 x) {
  const double r = x.norm();
  const double eta = cutoff_eta(r);
  if (eta == 0.0) return {0.0, 0.0};
  return harmonic_field(x) * eta;
}

Point2 k_alpha(Point2 x, const FilterParams& p) {
  const double r2 = x.norm2();
  if (r2 == 0.0) return {0.0, 0.0};
  return x.perp() * (bessel_mass(std::sqrt(r2), p) / r2);
}

double strain_factor(double r, const FilterParams& p) {
  if (!(r > 0.0)) throw DomainError("strain_factor: r must be > 0");
  return g_alpha(r, p) - 2.0 * bessel_mass(r, p) / (r * r);
}

Mat2 grad_k_alpha(Point2 x, const FilterParams& p) {
  const double r2 = x.norm2();
  if (r2 == 0.0) throw DomainError("grad_k_alpha: undefined at the origin");
  const double r = std::sqrt(r2);
  const double f = bessel_mass(r, p) / r2;
  const double c = strain_factor(r, p) / r2;  // f'(r) / r
  Mat2 j;
  j.m[0][0] = -x.x1 * x.x2 * c;
  j.m[0][1] = -f - x.x2 * x.x2 * c;
  j.m[1][0] = f + x.x1 * x.x1 * c;
  j.m[1][1] = x.x1 * x.x2 * c;
  return j;
}

Point2 image_kernel(Point2 x, Point2 y, double eps) {
  if (!(eps >= 0.0)) throw DomainError("image_kernel: eps must be >= 0");
  const double y2 = y.norm2();
  if (x.norm() < eps || std::sqrt(y2) < eps) {
    throw DomainError("image_kernel: point inside the obstacle");
  }
  if (x == y) throw DomainError("image_kernel: x == y");
  if (y2 == 0.0) throw DomainError("image_kernel: y at the origin");
  const Point2 direct = x - y;
  const Point2 reflected = x - y * (eps * eps / y2);
  const double rd = direct.norm2();
  const double rr = reflected.norm2();
  return direct.perp() * (1.0 / (kTwoPi * rd)) -
         reflected.perp() * (1.0 / (kTwoPi * rr));
}

namespace {
constexpr double kTableLo = 0.25;
constexpr double kTableHi = 40.0;
constexpr int kTablePerUnit = 2048;
}  // namespace

KernelProfile::KernelProfile(double alpha)
    : alpha_(alpha), inv_two_pi_alpha_(1.0 / (kTwoPi * alpha)), inv_h_(kTablePerUnit) {
  if (!(alpha > 0.0)) throw DomainError("KernelProfile: alpha must be > 0");
  const int n = static_cast<int>((kTableHi - kTableLo) * kTablePerUnit) + 2;
  value_.resize(n);
  slope_.resize(n);
  for (int i = 0; i < n; ++i) {
    const double rho = kTableLo + i / inv_h_;
    value_[i] = one_minus_z_k1(rho);
    slope_[i] = rho * bessel_k(0, rho);  // d/drho (1 - rho K_1)
  }
}

double KernelProfile::phi(double rho) const {
  if (std::isnan(rho)) return rho;  // reported by the caller's finiteness check
  if (rho < kTableLo) return one_minus_z_k1(rho);
  if (rho >= kTableHi) return 1.0;
  const double s = (rho - kTableLo) * inv_h_;
  const int i = static_cast<int>(s);
  const double t = s - i;
  const double h = 1.0 / inv_h_;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * value_[i] + (t3 - 2 * t2 + t) * h * slope_[i] +
         (-2 * t3 + 3 * t2) * value_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

double KernelProfile::factor_from_r2(double r2) const {
  if (r2 == 0.0) return 0.0;
  const double rho2 = r2 / alpha_;
  return phi(std::sqrt(rho2)) * inv_two_pi_alpha_ / rho2;
}

}  // namespace alphadisk
