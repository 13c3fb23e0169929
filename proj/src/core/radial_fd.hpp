#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace alphadisk {

// r_i = a + (b - a) (i / (n - 1))^p,  i = 0..n-1.
std::vector<double> graded_nodes(double a, double b, int n, double p);

// Graded block on [a, join] followed by a uniform block of spacing h_outer on
// [join, b]. The graded block gets just enough nodes that its last spacing does
// not exceed h_outer, so the outer nodes do not depend on a.
std::vector<double> composite_nodes(double a, double join, double p, double h_outer,
                                    double b);

// Three-point weights on a nonuniform mesh at interior node i.
struct Stencil3 {
  double lo, mid, hi;
};
Stencil3 first_derivative_weights(const std::vector<double>& r, std::size_t i);
Stencil3 second_derivative_weights(const std::vector<double>& r, std::size_t i);

// One-sided second-order first derivative at the ends (nodes 0,1,2 or n-1,n-2,n-3).
Stencil3 first_derivative_left(const std::vector<double>& r);
Stencil3 first_derivative_right(const std::vector<double>& r);

template <class T>
std::vector<T> radial_derivative(const std::vector<double>& r, const std::vector<T>& u);

// LU factorization of a tridiagonal matrix without pivoting, reusable for
// any number of real or complex right-hand sides.
class Tridiagonal {
 public:
  Tridiagonal() = default;
  Tridiagonal(std::vector<double> lower, std::vector<double> diag,
              std::vector<double> upper);

  std::size_t size() const { return diag_.size(); }

  template <class T>
  void solve_in_place(std::vector<T>& rhs) const;

  template <class T>
  std::vector<T> apply(const std::vector<T>& x) const;

 private:
  void factorize();

  std::vector<double> lower_, diag_, upper_;  // original matrix
  std::vector<double> mult_, pivot_;          // L multipliers and U diagonal
};

// Discretization of  c0 u + c2 (u'' + u'/r - n^2 u / r^2) = f  on the nodes r
// with a Dirichlet row at r_0 and, at r_{N-1}, either Dirichlet or
// the Robin condition u' - kappa u = g (one-sided, reduced to tridiagonal form
// by eliminating the third unknown with the neighbouring interior row).
struct RadialBoundary {
  bool robin = true;
  double kappa = 0.0;
};

class RadialOperator {
 public:
  RadialOperator() = default;
  RadialOperator(const std::vector<double>& r, double n, double c0, double c2,
                 RadialBoundary outer);

  // rhs[0] is the Dirichlet value at r_0, rhs[N-1] the outer boundary datum,
  // the rest the interior right side. Returns the discrete solution.
  template <class T>
  std::vector<T> solve(std::vector<T> rhs) const;

  // Max-norm residual of the discrete equations at u for the given rhs
  // (same layout as solve).
  template <class T>
  double residual(const std::vector<T>& u, const std::vector<T>& rhs) const;

  const std::vector<double>& nodes() const { return r_; }

 private:
  std::vector<double> r_;
  Tridiagonal system_;
  double elimination_ = 0.0;  // multiple of row N-2 subtracted from row N-1
};

}  // namespace alphadisk
