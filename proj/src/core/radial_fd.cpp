#include "core/radial_fd.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace alphadisk {

std::vector<double> graded_nodes(double a, double b, int n, double p) {
  if (n < 2) throw DomainError("graded_nodes: need at least 2 nodes");
  if (!(a < b)) throw DomainError("graded_nodes: need a < b");
  if (!(p >= 1.0)) throw DomainError("graded_nodes: grading exponent must be >= 1");
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) {
    r[i] = a + (b - a) * std::pow(static_cast<double>(i) / (n - 1), p);
  }
  r.back() = b;
  return r;
}

std::vector<double> composite_nodes(double a, double join, double p, double h_outer,
                                    double b) {
  if (!(a < join && join < b)) {
    throw DomainError("composite_nodes: need a < join < b");
  }
  if (!(h_outer > 0.0)) throw DomainError("composite_nodes: h_outer must be > 0");
  // last graded spacing is about p (join - a) / (n - 1)
  const int n_inner =
      std::max(3, static_cast<int>(std::ceil(p * (join - a) / h_outer)) + 1);
  std::vector<double> r = graded_nodes(a, join, n_inner, p);
  const int n_outer = static_cast<int>(std::llround((b - join) / h_outer));
  if (n_outer < 1) throw DomainError("composite_nodes: outer block is empty");
  for (int k = 1; k <= n_outer; ++k) r.push_back(join + k * h_outer);
  return r;
}

Stencil3 first_derivative_weights(const std::vector<double>& r, std::size_t i) {
  const double hm = r[i] - r[i - 1];
  const double hp = r[i + 1] - r[i];
  return {-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))};
}

Stencil3 second_derivative_weights(const std::vector<double>& r, std::size_t i) {
  const double hm = r[i] - r[i - 1];
  const double hp = r[i + 1] - r[i];
  return {2.0 / (hm * (hm + hp)), -2.0 / (hm * hp), 2.0 / (hp * (hm + hp))};
}

// Weights on (r_0, r_1, r_2).
Stencil3 first_derivative_left(const std::vector<double>& r) {
  const double h1 = r[1] - r[0];
  const double h2 = r[2] - r[1];
  return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
          -h1 / (h2 * (h1 + h2))};
}

// Weights on (r_{N-3}, r_{N-2}, r_{N-1}).
Stencil3 first_derivative_right(const std::vector<double>& r) {
  const std::size_t n = r.size();
  const double h1 = r[n - 1] - r[n - 2];
  const double h2 = r[n - 2] - r[n - 3];
  return {h1 / (h2 * (h1 + h2)), -(h1 + h2) / (h1 * h2),
          (2.0 * h1 + h2) / (h1 * (h1 + h2))};
}

template <class T>
std::vector<T> radial_derivative(const std::vector<double>& r, const std::vector<T>& u) {
  const std::size_t n = r.size();
  if (n < 3 || u.size() != n) throw DomainError("radial_derivative: size mismatch");
  std::vector<T> d(n);
  const Stencil3 left = first_derivative_left(r);
  d[0] = left.lo * u[0] + left.mid * u[1] + left.hi * u[2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Stencil3 w = first_derivative_weights(r, i);
    d[i] = w.lo * u[i - 1] + w.mid * u[i] + w.hi * u[i + 1];
  }
  const Stencil3 right = first_derivative_right(r);
  d[n - 1] = right.lo * u[n - 3] + right.mid * u[n - 2] + right.hi * u[n - 1];
  return d;
}

template std::vector<double> radial_derivative(const std::vector<double>&,
                                               const std::vector<double>&);
template std::vector<std::complex<double>> radial_derivative(
    const std::vector<double>&, const std::vector<std::complex<double>>&);

Tridiagonal::Tridiagonal(std::vector<double> lower, std::vector<double> diag,
                         std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
  if (lower_.size() != diag_.size() || upper_.size() != diag_.size()) {
    throw DomainError("Tridiagonal: band lengths differ");
  }
  factorize();
}

void Tridiagonal::factorize() {
  const std::size_t n = diag_.size();
  mult_.assign(n, 0.0);
  pivot_.assign(n, 0.0);
  if (n == 0) return;
  pivot_[0] = diag_[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      mult_[i] = lower_[i] / pivot_[i - 1];
      pivot_[i] = diag_[i] - mult_[i] * upper_[i - 1];
    }
    const double scale =
        std::abs(diag_[i]) + std::abs(lower_[i]) + std::abs(upper_[i]);
    if (!(std::abs(pivot_[i]) > 1e-14 * scale)) {
      throw NumericalError("Tridiagonal: singular pivot at row " + std::to_string(i) +
                           " of " + std::to_string(n));
    }
  }
}

template <class T>
void Tridiagonal::solve_in_place(std::vector<T>& rhs) const {
  const std::size_t n = diag_.size();
  if (rhs.size() != n) throw DomainError("Tridiagonal: rhs size mismatch");
  for (std::size_t i = 1; i < n; ++i) rhs[i] -= mult_[i] * rhs[i - 1];
  rhs[n - 1] /= pivot_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / pivot_[i];
  }
}

template <class T>
std::vector<T> Tridiagonal::apply(const std::vector<T>& x) const {
  const std::size_t n = diag_.size();
  std::vector<T> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    T v = diag_[i] * x[i];
    if (i > 0) v += lower_[i] * x[i - 1];
    if (i + 1 < n) v += upper_[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

template void Tridiagonal::solve_in_place(std::vector<double>&) const;
template void Tridiagonal::solve_in_place(std::vector<std::complex<double>>&) const;
template std::vector<double> Tridiagonal::apply(const std::vector<double>&) const;
template std::vector<std::complex<double>> Tridiagonal::apply(
    const std::vector<std::complex<double>>&) const;

RadialOperator::RadialOperator(const std::vector<double>& r, double n, double c0,
                               double c2, RadialBoundary outer)
    : r_(r) {
  const std::size_t m = r.size();
  if (m < 4) throw DomainError("RadialOperator: need at least 4 nodes");
  for (std::size_t i = 1; i < m; ++i) {
    if (!(r[i] > r[i - 1])) throw DomainError("RadialOperator: nodes not increasing");
  }
  if (!(r[0] > 0.0)) throw DomainError("RadialOperator: inner radius must be > 0");

  std::vector<double> lo(m, 0.0), di(m, 0.0), up(m, 0.0);
  di[0] = 1.0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const Stencil3 d1 = first_derivative_weights(r, i);
    const Stencil3 d2 = second_derivative_weights(r, i);
    const double inv_r = 1.0 / r[i];
    lo[i] = c2 * (d2.lo + inv_r * d1.lo);
    di[i] = c0 + c2 * (d2.mid + inv_r * d1.mid - n * n * inv_r * inv_r);
    up[i] = c2 * (d2.hi + inv_r * d1.hi);
  }
  if (outer.robin) {
    const Stencil3 w = first_derivative_right(r);
    elimination_ = w.lo / lo[m - 2];
    lo[m - 1] = w.mid - elimination_ * di[m - 2];
    di[m - 1] = w.hi - outer.kappa - elimination_ * up[m - 2];
  } else {
    di[m - 1] = 1.0;
  }
  system_ = Tridiagonal(std::move(lo), std::move(di), std::move(up));
}

template <class T>
std::vector<T> RadialOperator::solve(std::vector<T> rhs) const {
  const std::size_t m = r_.size();
  if (rhs.size() != m) throw DomainError("RadialOperator: rhs size mismatch");
  rhs[m - 1] -= elimination_ * rhs[m - 2];
  system_.solve_in_place(rhs);
  return rhs;
}

template <class T>
double RadialOperator::residual(const std::vector<T>& u, const std::vector<T>& rhs) const {
  const std::size_t m = r_.size();
  std::vector<T> b = rhs;
  b[m - 1] -= elimination_ * b[m - 2];
  const std::vector<T> au = system_.apply(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(au[i] - b[i]));
  return worst;
}

template std::vector<double> RadialOperator::solve(std::vector<double>) const;
template std::vector<std::complex<double>> RadialOperator::solve(
    std::vector<std::complex<double>>) const;
template double RadialOperator::residual(const std::vector<double>&,
                                         const std::vector<double>&) const;
template double RadialOperator::residual(const std::vector<std::complex<double>>&,
                                         const std::vector<std::complex<double>>&) const;

}  // namespace alphadisk
