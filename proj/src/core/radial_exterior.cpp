#include "core/radial_exterior.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/radial_fd.hpp"

namespace alphadisk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_obstacle(const FilterParams& p, const char* who) {
  p.validate();
  if (!(p.eps > 0.0)) throw DomainError(std::string(who) + ": eps must be > 0");
}

void require_exterior(double r, const FilterParams& p, const char* who) {
  require_obstacle(p, who);
  if (!(r >= p.eps)) throw DomainError(std::string(who) + ": r must be >= eps");
}

// K_1(rho) / K_1(rho_eps), safe for large rho.
double k1_ratio(double rho, double rho_eps) {
  return bessel_k_scaled(1, rho) / bessel_k_scaled(1, rho_eps) *
         std::exp(-(rho - rho_eps));
}

// Coefficient D of w4 = D K_1(r/sqrt(alpha)).
double w4_coefficient(const FilterParams& p) {
  const double sa = p.sqrt_alpha();
  return 1.0 / (kTwoPi * sa) - 1.0 / (kTwoPi * p.eps * bessel_k(1, p.eps / sa));
}

}  // namespace

double filtered_harmonic(double r, const FilterParams& p) {
  require_exterior(r, p, "filtered_harmonic");
  const double sa = p.sqrt_alpha();
  return 1.0 / (kTwoPi * r) - k1_ratio(r / sa, p.eps / sa) / (kTwoPi * p.eps);
}

double filtered_harmonic_derivative(double r, const FilterParams& p) {
  require_exterior(r, p, "filtered_harmonic_derivative");
  const double sa = p.sqrt_alpha();
  const double rho = r / sa;
  const double rho_eps = p.eps / sa;
  // -K_1'(rho) = K_0(rho) + K_1(rho)/rho
  const double scale = std::exp(-(rho - rho_eps)) / bessel_k_scaled(1, rho_eps);
  const double dk = (bessel_k_scaled(0, rho) + bessel_k_scaled(1, rho) / rho) * scale;
  return -1.0 / (kTwoPi * r * r) + dk / (kTwoPi * p.eps * sa);
}

double w4_profile(double r, const FilterParams& p) {
  require_exterior(r, p, "w4_profile");
  return w4_coefficient(p) * bessel_k(1, r / p.sqrt_alpha());
}

double w4_derivative(double r, const FilterParams& p) {
  require_exterior(r, p, "w4_derivative");
  const double sa = p.sqrt_alpha();
  const double rho = r / sa;
  return -w4_coefficient(p) * (bessel_k(0, rho) + bessel_k(1, rho) / rho) / sa;
}

double a_eps(const FilterParams& p) {
  require_obstacle(p, "a_eps");
  return -k_theta(p.eps, p) / p.alpha;
}

double b_eps(const FilterParams& p) {
  require_obstacle(p, "b_eps");
  const double rho_eps = p.eps / p.sqrt_alpha();
  return -p.sqrt_alpha() * a_eps(p) * bessel_k(0, rho_eps) / bessel_k(1, rho_eps);
}

double w4_h1_energy(const FilterParams& p, EnergyMode mode, const QuadratureSpec& spec) {
  require_obstacle(p, "w4_h1_energy");
  if (mode == EnergyMode::identity) {
    const double a = a_eps(p);
    const double b = b_eps(p);
    return kTwoPi * p.alpha * p.alpha * p.eps * a * ((p.alpha / p.eps) * a - b);
  }
  // Independent route: w4 = w3 - k with both pieces from their own closed forms.
  // |grad(u theta_hat)|^2 = u'^2 + (u/r)^2.
  auto integrand = [&p](double r) {
    const double u = filtered_harmonic(r, p) - k_theta(r, p);
    const double du = filtered_harmonic_derivative(r, p) - k_theta_derivative(r, p);
    return (u * u + p.alpha * (du * du + u * u / (r * r))) * r;
  };
  // Split at a few filter lengths so the bisection sees the boundary layer.
  const double mid = p.eps + 4.0 * p.sqrt_alpha();
  return kTwoPi * (integrate_radial(integrand, p.eps, mid, spec) +
                   integrate_radial(integrand, mid, INFINITY, spec));
}

BoundaryConstants boundary_constants(const FilterParams& p) {
  return {a_eps(p), b_eps(p), w4_h1_energy(p, EnergyMode::identity)};
}

double f_extension(double r, const FilterParams& p) {
  require_obstacle(p, "f_extension");
  if (!(r >= 0.0)) throw DomainError("f_extension: r must be >= 0");
  if (r < p.eps) return b_eps(p);
  const double sa = p.sqrt_alpha();
  return -w4_coefficient(p) * bessel_k(0, r / sa) / sa;
}

double cutoff_source(double r, const FilterParams& p) {
  if (!(r > 0.0)) throw DomainError("cutoff_source: r must be > 0");
  return p.alpha * (cutoff_eta_d2(r) - cutoff_eta_d1(r) / r) / (kTwoPi * r);
}

CutoffCorrection cutoff_correction(const FilterParams& p, const CutoffGrid& grid) {
  require_obstacle(p, "cutoff_correction");
  if (!(p.eps < 1.0)) throw DomainError("cutoff_correction: eps must be < 1");
  const double r_max =
      grid.r_max > 0.0 ? grid.r_max : 8.0 * std::max(1.0, 30.0 * p.sqrt_alpha());
  if (!(r_max > 2.0)) throw DomainError("cutoff_correction: r_max must exceed 2");

  const std::vector<double> r = composite_nodes(p.eps, 1.0, grid.grading, grid.h_outer, r_max);
  const std::size_t n = r.size();
  const RadialOperator op(r, 1.0, 1.0, -p.alpha, RadialBoundary{false, 0.0});

  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) rhs[i] = cutoff_source(r[i], p);
  std::vector<double> w = op.solve(rhs);

  CutoffCorrection out;
  out.residual = op.residual(w, rhs);
  out.r_max = r.back();

  const std::vector<double> dw = radial_derivative(r, w);
  double energy = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto dens = [&](std::size_t k) {
      return (w[k] * w[k] + p.alpha * (dw[k] * dw[k] + w[k] * w[k] / (r[k] * r[k]))) * r[k];
    };
    energy += 0.5 * (r[i + 1] - r[i]) * (dens(i) + dens(i + 1));
  }
  out.h1_norm = std::sqrt(kTwoPi * energy);
  out.profile.grid = r;
  out.profile.values = std::move(w);
  return out;
}

}  // namespace alphadisk
