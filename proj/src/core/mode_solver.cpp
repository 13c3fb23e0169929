#include "core/mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/specfun.hpp"

namespace alphadisk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

double left_derivative(const std::vector<double>& r, const std::vector<double>& u) {
  const Stencil3 w = first_derivative_left(r);
  return w.lo * u[0] + w.mid * u[1] + w.hi * u[2];
}

cplx left_derivative(const std::vector<double>& r, const ComplexProfile& u) {
  const Stencil3 w = first_derivative_left(r);
  return w.lo * u[0] + w.mid * u[1] + w.hi * u[2];
}

void check_finite(const ComplexProfile& u, const char* what) {
  for (const cplx& v : u) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError(std::string("mode solver: non-finite ") + what);
    }
  }
}

}  // namespace

ModeSolver::ModeSolver(const PolarGrid& grid, double alpha, int n_modes)
    : grid_(grid), r_(grid.radii()), alpha_(alpha), n_modes_(n_modes) {
  if (!(alpha > 0.0)) throw DomainError("ModeSolver: alpha must be > 0");
  if (n_modes < 0) throw DomainError("ModeSolver: mode count must be >= 0");
  if (grid.n_theta < 2 * n_modes + 2) throw DomainError("ModeSolver: need n_theta >= 2N + 2");

  const double sa = std::sqrt(alpha);
  const double R = r_.back();
  const std::size_t m = r_.size();
  cache_.reserve(n_modes + 1);
  poisson_.reserve(n_modes + 1);
  for (int n = 0; n <= n_modes; ++n) {
    poisson_.emplace_back(r_, n, 0.0, 1.0, RadialBoundary{true, -n / R});

    ModeCache c;
    // Mode 0 is solved in velocity form, which has the order-1 operator.
    const int order = n == 0 ? 1 : n;
    c.kappa = bessel_k_log_derivative(order, R / sa) / sa;
    c.helmholtz = RadialOperator(r_, order, 1.0, -alpha, RadialBoundary{true, c.kappa});
    if (n > 0) {
      c.laplace = RadialOperator(r_, n, 0.0, 1.0, RadialBoundary{true, -n / R});
      std::vector<double> rhs(m, 0.0);
      rhs[0] = 1.0;
      c.chi_h = c.helmholtz.solve(rhs);
      std::vector<double> prhs = c.chi_h;
      prhs[0] = 0.0;
      prhs[m - 1] = alpha * (c.kappa + n / R) * c.chi_h[m - 1];
      c.psi_h = c.laplace.solve(prhs);
      c.dpsi_h = left_derivative(r_, c.psi_h);
      if (!(std::abs(c.dpsi_h) > 0.0) || !std::isfinite(c.dpsi_h)) {
        throw NumericalError("ModeSolver: degenerate homogeneous solution for mode " +
                             std::to_string(n));
      }
    }
    cache_.push_back(std::move(c));
  }
}

ModeField ModeSolver::filtered_velocity(const PolarField& q, double gamma) const {
  if (q.r.size() != r_.size() || q.n_theta() != grid_.n_theta) {
    throw DomainError("filtered_velocity: field and solver grids differ");
  }
  return filtered_velocity(analyze(q, n_modes_), gamma);
}

ModeField ModeSolver::filtered_velocity(const ModeCoefficients& q, double gamma) const {
  if (q.n_modes != n_modes_) throw DomainError("filtered_velocity: mode count mismatch");
  const std::size_t m = r_.size();
  const double R = r_.back();

  ModeField out;
  out.grid = grid_;
  out.r = r_;
  out.n_modes = n_modes_;
  out.u_r.assign(n_modes_ + 1, ComplexProfile(m));
  out.u_theta.assign(n_modes_ + 1, ComplexProfile(m));

  // Mode 0: circulation integral with the trapezoid rule (matches PolarField::mass).
  const ComplexProfile& q0 = q.coeffs[0];
  std::vector<double> cum(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    cum[i] = cum[i - 1] +
             0.5 * (r_[i] - r_[i - 1]) * (r_[i] * q0[i].real() + r_[i - 1] * q0[i - 1].real());
  }
  const double mass = kTwoPi * cum[m - 1];
  const double beta = gamma + mass;
  std::vector<double> rhs(m);
  rhs[0] = 0.0;
  for (std::size_t i = 1; i + 1 < m; ++i) rhs[i] = (cum[i] + gamma / kTwoPi) / r_[i];
  const double kappa = cache_[0].kappa;
  rhs[m - 1] = -beta / (kTwoPi * R * R) - kappa * beta / (kTwoPi * R);
  const std::vector<double> u0 = cache_[0].helmholtz.solve(rhs);
  for (std::size_t i = 0; i < m; ++i) out.u_theta[0][i] = u0[i];

  for (int n = 1; n <= n_modes_; ++n) {
    const ModeCache& c = cache_[n];
    ComplexProfile crhs = q.coeffs[n];
    crhs[0] = 0.0;
    crhs[m - 1] = 0.0;
    const ComplexProfile chi = c.helmholtz.solve(crhs);
    ComplexProfile prhs = chi;
    prhs[0] = 0.0;
    prhs[m - 1] = alpha_ * (c.kappa + n / R) * chi[m - 1];
    ComplexProfile psi = c.laplace.solve(prhs);
    const cplx a = -left_derivative(r_, psi) / c.dpsi_h;
    for (std::size_t i = 0; i < m; ++i) psi[i] += a * c.psi_h[i];
    const ComplexProfile dpsi = radial_derivative(r_, psi);
    const cplx in(0.0, static_cast<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
      out.u_r[n][i] = -in * psi[i] / r_[i];
      out.u_theta[n][i] = dpsi[i];
    }
    check_finite(out.u_theta[n], "velocity");
  }

  out.params.alpha = alpha_;
  out.params.eps = grid_.eps;
  out.params.gamma = gamma;
  out.params.mass = mass;
  return out;
}

ComplexProfile ModeSolver::exterior_poisson(int n, const ComplexProfile& rhs) const {
  if (n < 0) n = -n;
  if (n > n_modes_) throw DomainError("exterior_poisson: mode above truncation");
  if (rhs.size() != r_.size()) throw DomainError("exterior_poisson: rhs size mismatch");
  ComplexProfile b = rhs;
  b.front() = 0.0;
  b.back() = 0.0;
  ComplexProfile xi = poisson_[n].solve(b);
  check_finite(xi, "stream function");
  return xi;
}

double ModeSolver::poisson_gradient_norm(const ModeCoefficients& q) const {
  const std::size_t m = r_.size();
  double total = 0.0;
  for (int n = 0; n <= n_modes_; ++n) {
    const ComplexProfile xi = exterior_poisson(n, q.coeffs[n]);
    const ComplexProfile dxi = radial_derivative(r_, xi);
    std::vector<double> dens(m);
    for (std::size_t i = 0; i < m; ++i) {
      dens[i] = (std::norm(dxi[i]) + n * n * std::norm(xi[i]) / (r_[i] * r_[i])) * r_[i];
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) s += 0.5 * (r_[i + 1] - r_[i]) * (dens[i] + dens[i + 1]);
    total += (n == 0 ? 1.0 : 2.0) * kTwoPi * s;
  }
  return std::sqrt(total);
}

ModeField filtered_velocity(const PolarField& q, const FilterParams& params, int n_modes) {
  params.validate();
  if (std::abs(params.eps - q.grid.eps) > 0.0) {
    throw DomainError("filtered_velocity: params.eps differs from the grid");
  }
  const ModeSolver solver(q.grid, params.alpha, n_modes);
  return solver.filtered_velocity(q, params.gamma);
}

std::vector<Point2> eval_velocity(const ModeField& u, const std::vector<Point2>& points) {
  const std::vector<double>& r = u.r;
  const std::size_t m = r.size();
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const Point2& x : points) {
    const double rad = x.norm();
    if (!(rad >= r.front() && rad <= r.back())) {
      throw DomainError("eval_velocity: point outside the annulus");
    }
    // cell k with r[k] <= rad < r[k+1]
    std::size_t k = static_cast<std::size_t>(
        std::upper_bound(r.begin(), r.end(), rad) - r.begin());
    k = k == 0 ? 0 : k - 1;
    if (k > m - 2) k = m - 2;
    std::size_t lo = k == 0 ? 0 : k - 1;
    if (lo + 3 >= m) lo = m - 4;
    double w[4];
    for (int a = 0; a < 4; ++a) {
      double p = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (b != a) p *= (rad - r[lo + b]) / (r[lo + a] - r[lo + b]);
      }
      w[a] = p;
    }
    const double th = std::atan2(x.x2, x.x1);
    double ur = 0.0, ut = 0.0;
    for (int n = 0; n <= u.n_modes; ++n) {
      cplx cr = 0.0, ct = 0.0;
      for (int a = 0; a < 4; ++a) {
        cr += w[a] * u.u_r[n][lo + a];
        ct += w[a] * u.u_theta[n][lo + a];
      }
      if (n == 0) {
        ur += cr.real();
        ut += ct.real();
      } else {
        const cplx e = std::polar(1.0, n * th);
        ur += 2.0 * (cr * e).real();
        ut += 2.0 * (ct * e).real();
      }
    }
    const double c = std::cos(th), s = std::sin(th);
    out.push_back({ur * c - ut * s, ur * s + ut * c});
  }
  return out;
}

GridVelocity velocity_on_grid(const ModeField& u) {
  GridVelocity g;
  g.n_r = static_cast<int>(u.r.size());
  g.n_theta = u.grid.n_theta;
  const auto ur = synthesize(u.u_r, g.n_theta);
  const auto ut = synthesize(u.u_theta, g.n_theta);
  g.u_r.resize(static_cast<std::size_t>(g.n_r) * g.n_theta);
  g.u_theta.resize(g.u_r.size());
  for (int i = 0; i < g.n_r; ++i) {
    std::copy(ur[i].begin(), ur[i].end(), g.u_r.begin() + static_cast<std::ptrdiff_t>(i) * g.n_theta);
    std::copy(ut[i].begin(), ut[i].end(), g.u_theta.begin() + static_cast<std::ptrdiff_t>(i) * g.n_theta);
  }
  return g;
}

double unfiltered_azimuthal(const ModeField& u, std::size_t i) {
  const std::vector<double>& r = u.r;
  if (i == 0 || i + 1 >= r.size()) throw DomainError("unfiltered_azimuthal: interior node only");
  const Stencil3 d1 = first_derivative_weights(r, i);
  const Stencil3 d2 = second_derivative_weights(r, i);
  const auto& v = u.u_theta[0];
  const double up = d1.lo * v[i - 1].real() + d1.mid * v[i].real() + d1.hi * v[i + 1].real();
  const double upp = d2.lo * v[i - 1].real() + d2.mid * v[i].real() + d2.hi * v[i + 1].real();
  const double x = v[i].real();
  return x - u.params.alpha * (upp + up / r[i] - x / (r[i] * r[i]));
}

}  // namespace alphadisk
