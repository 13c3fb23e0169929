#pragma once

#include <cstddef>
#include <functional>

namespace alphadisk {

// Modified Bessel functions of integer order 0 and 1 for real arguments.
//
// I_n: power series for z <= 30, periodic trapezoid rule on the integral
// representation (1/pi) int_0^pi e^{z cos t} cos(nt) dt beyond that.
// K_n: power series with the logarithmic term for z <= 2, trapezoid rule on
// int_0^inf e^{-z cosh t} cosh(nt) dt for z > 2. Both are accurate to a few
// ulps in the ranges the solvers use.
//
// The *_scaled variants return e^{-z} I_n(z) and e^{z} K_n(z).
double bessel_i(int order, double z);
double bessel_i_scaled(int order, double z);
double bessel_k(int order, double z);
double bessel_k_scaled(int order, double z);

// 1 - z K_1(z), evaluated without cancellation for small z. This is the
// factor that appears in the mass of the Bessel potential inside a disk.
double one_minus_z_k1(double z);

// Logarithmic derivative K_n'(z) / K_n(z) for integer n >= 0, from the
// scaled order-0/1 values and upward recurrence. Used for far-field
// closures of the per-mode radial problems.
double bessel_k_log_derivative(int order, double z);

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_subdivisions = 2000;

  void validate() const;
};

// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection.
// b may be +infinity; the half line is mapped by s = a + t / (1 - t).
// Throws NumericalError when the tolerance cannot be met within
// spec.max_subdivisions intervals.
double integrate_radial(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec = {});

}  // namespace alphadisk
