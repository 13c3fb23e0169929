#include "core/polar_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"
#include "core/fft.hpp"
#include "core/radial_fd.hpp"

namespace alphadisk {

void PolarGrid::validate() const {
  if (!(eps > 0.0)) throw DomainError("PolarGrid: eps must be > 0");
  if (!(r_max > eps)) throw DomainError("PolarGrid: need eps < r_max");
  if (n_r < 16) throw DomainError("PolarGrid: n_r must be >= 16");
  if (n_theta < 8 || (n_theta & (n_theta - 1)) != 0) {
    throw DomainError("PolarGrid: n_theta must be a power of two >= 8");
  }
  if (!(grading >= 1.0)) throw DomainError("PolarGrid: grading must be >= 1");
  if (r_join != 0.0 && !(r_join > eps && r_join < r_max)) {
    throw DomainError("PolarGrid: r_join must lie in (eps, r_max)");
  }
}

std::vector<double> PolarGrid::radii() const {
  validate();
  if (r_join == 0.0) return graded_nodes(eps, r_max, n_r, grading);
  return composite_nodes(eps, r_join, grading, (r_max - r_join) / (n_r - 1), r_max);
}

double PolarGrid::theta(int j) const { return 2.0 * std::numbers::pi * j / n_theta; }

PolarField::PolarField(const PolarGrid& g) : grid(g), r(g.radii()) {
  values.assign(r.size() * static_cast<std::size_t>(g.n_theta), 0.0);
}

PolarField::PolarField(const PolarGrid& g, const std::function<double(Point2)>& f)
    : PolarField(g) {
  for (int i = 0; i < n_r(); ++i) {
    for (int j = 0; j < n_theta(); ++j) at(i, j) = f(point(i, j));
  }
}

Point2 PolarField::point(int i, int j) const {
  const double t = grid.theta(j);
  return {r[i] * std::cos(t), r[i] * std::sin(t)};
}

double PolarField::mass() const {
  return integrate([](Point2) { return 1.0; });
}

double PolarField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double PolarField::integrate(const std::function<double(Point2)>& phi) const {
  const double dtheta = 2.0 * std::numbers::pi / n_theta();
  std::vector<double> ring(n_r(), 0.0);
  for (int i = 0; i < n_r(); ++i) {
    double s = 0.0;
    for (int j = 0; j < n_theta(); ++j) {
      const double q = at(i, j);
      if (q != 0.0) s += q * phi(point(i, j));
    }
    ring[i] = s * dtheta * r[i];
  }
  double total = 0.0;
  for (int i = 0; i + 1 < n_r(); ++i) total += 0.5 * (r[i + 1] - r[i]) * (ring[i] + ring[i + 1]);
  return total;
}

ModeCoefficients analyze(const PolarField& q, int n_modes) {
  const int nt = q.n_theta();
  if (n_modes < 0) throw DomainError("analyze: mode count must be >= 0");
  if (nt < 2 * n_modes + 2) throw DomainError("analyze: need n_theta >= 2N + 2");
  const RealFft fft(nt);
  const int half = nt / 2;
  std::vector<std::complex<double>> spec(half + 1);

  ModeCoefficients out;
  out.n_modes = n_modes;
  out.coeffs.assign(n_modes + 1, std::vector<std::complex<double>>(q.n_r()));
  double total = 0.0, dropped = 0.0;
  for (int i = 0; i < q.n_r(); ++i) {
    fft.forward(&q.values[static_cast<std::size_t>(i) * nt], spec.data());
    for (int n = 0; n <= half; ++n) {
      spec[n] /= nt;
      // modes 1..half-1 appear twice in the two-sided sum
      const double w = (n == 0 || n == half) ? 1.0 : 2.0;
      const double e = w * std::norm(spec[n]);
      total += e;
      if (n > n_modes) dropped += e;
    }
    for (int n = 0; n <= n_modes; ++n) out.coeffs[n][i] = spec[n];
  }
  out.dropped_fraction = total > 0.0 ? dropped / total : 0.0;
  out.aliasing_warning = out.dropped_fraction > kAliasingThreshold;
  return out;
}

std::vector<std::vector<double>> synthesize(
    const std::vector<std::vector<std::complex<double>>>& coeffs, int n_theta) {
  if (coeffs.empty()) throw DomainError("synthesize: no modes");
  const int n_modes = static_cast<int>(coeffs.size()) - 1;
  if (n_theta < 2 * n_modes + 2) throw DomainError("synthesize: need n_theta >= 2N + 2");
  const std::size_t n_r = coeffs[0].size();
  const RealFft fft(n_theta);
  std::vector<std::complex<double>> spec(n_theta / 2 + 1);
  std::vector<std::vector<double>> out(n_r, std::vector<double>(n_theta));
  for (std::size_t i = 0; i < n_r; ++i) {
    std::fill(spec.begin(), spec.end(), std::complex<double>(0.0, 0.0));
    for (int n = 0; n <= n_modes; ++n) spec[n] = coeffs[n][i];
    spec[0].imag(0.0);
    fft.inverse(spec.data(), out[i].data());
  }
  return out;
}

}  // namespace alphadisk
