#include "core/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace alphadisk {

namespace {

constexpr double kEuler = std::numbers::egamma;
constexpr double kSeriesTol = 1e-17;

// Crossovers between the series and the integral representations.
constexpr double kISeriesMax = 30.0;
constexpr double kKSeriesMax = 2.0;

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw DomainError("bessel: only orders 0 and 1 are supported, got " +
                      std::to_string(order));
  }
}

// I_order(z) by its power series; all terms positive.
double i_series(int order, double z) {
  const double q = 0.25 * z * z;
  double term = order == 0 ? 1.0 : 0.5 * z;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (term < kSeriesTol * sum) break;
  }
  return sum;
}

// e^{-z} I_order(z) from the periodic trapezoid rule, spectrally accurate.
double i_scaled_trapezoid(int order, double z) {
  const int m = static_cast<int>(std::ceil(8.0 * std::sqrt(z))) + 16;
  const double h = std::numbers::pi / m;
  double sum = 0.5 * (1.0 + std::exp(-2.0 * z) * (order == 0 ? 1.0 : -1.0));
  for (int j = 1; j < m; ++j) {
    const double t = j * h;
    sum += std::exp(z * (std::cos(t) - 1.0)) * std::cos(order * t);
  }
  return sum * h / std::numbers::pi;
}

// Small-argument series for K_0 and the non-singular part of K_1.
// Returns K_0(z); fills `k1_tail` with
//   sum_k [psi(k+1)+psi(k+2)] (z^2/4)^k / (k!(k+1)!)
double k_series_parts(double z, double* k1_tail) {
  const double q = 0.25 * z * z;
  double harmonic = 0.0;  // H_k
  double t0 = 1.0;        // (z^2/4)^k / (k!)^2
  double t1 = 1.0;        // (z^2/4)^k / (k!(k+1)!)
  double i0 = 1.0;
  double k0_tail = 0.0;
  double tail1 = (2.0 * harmonic + 1.0 - 2.0 * kEuler) * t1;
  for (int k = 1; k < 200; ++k) {
    const double dk = k;
    t0 *= q / (dk * dk);
    t1 *= q / (dk * (dk + 1.0));
    harmonic += 1.0 / dk;
    i0 += t0;
    k0_tail += t0 * harmonic;
    // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
    tail1 += (2.0 * harmonic + 1.0 / (dk + 1.0) - 2.0 * kEuler) * t1;
    if (t0 < kSeriesTol * i0 && t1 < kSeriesTol) break;
  }
  *k1_tail = tail1;
  return -(std::log(0.5 * z) + kEuler) * i0 + k0_tail;
}

double k_series(int order, double z) {
  double tail = 0.0;
  const double k0 = k_series_parts(z, &tail);
  if (order == 0) return k0;
  return 1.0 / z + std::log(0.5 * z) * i_series(1, z) - 0.25 * z * tail;
}

// e^{z} K_order(z) = int_0^inf e^{-z (cosh t - 1)} cosh(order t) dt, by the
// trapezoid rule (geometric convergence for analytic integrands).
double k_scaled_trapezoid(int order, double z) {
  const double h = 0.25 / std::sqrt(z);
  double sum = 0.5;
  for (int j = 1; j < 100000; ++j) {
    const double t = j * h;
    const double expo = z * (std::cosh(t) - 1.0);
    const double term = std::exp(-expo) * (order == 0 ? 1.0 : std::cosh(t));
    sum += term;
    if (expo - order * t > 50.0) break;
  }
  return sum * h;
}

}  // namespace

double bessel_i(int order, double z) {
  check_order(order);
  if (!(z >= 0.0)) throw DomainError("bessel_i: argument must be >= 0");
  if (z <= kISeriesMax) return i_series(order, z);
  return std::exp(z) * i_scaled_trapezoid(order, z);
}

double bessel_i_scaled(int order, double z) {
  check_order(order);
  if (!(z >= 0.0)) throw DomainError("bessel_i: argument must be >= 0");
  if (z <= kISeriesMax) return std::exp(-z) * i_series(order, z);
  return i_scaled_trapezoid(order, z);
}

double bessel_k(int order, double z) {
  check_order(order);
  if (!(z > 0.0)) throw DomainError("bessel_k: argument must be > 0");
  if (z <= kKSeriesMax) return k_series(order, z);
  return std::exp(-z) * k_scaled_trapezoid(order, z);
}

double bessel_k_scaled(int order, double z) {
  check_order(order);
  if (!(z > 0.0)) throw DomainError("bessel_k: argument must be > 0");
  if (z <= kKSeriesMax) return std::exp(z) * k_series(order, z);
  if (std::isinf(z)) return 0.0;
  return k_scaled_trapezoid(order, z);
}

double one_minus_z_k1(double z) {
  if (!(z >= 0.0)) throw DomainError("one_minus_z_k1: argument must be >= 0");
  if (z == 0.0) return 0.0;
  if (z > kKSeriesMax) return 1.0 - z * bessel_k(1, z);
  double tail = 0.0;
  k_series_parts(z, &tail);
  return -z * std::log(0.5 * z) * i_series(1, z) + 0.25 * z * z * tail;
}

double bessel_k_log_derivative(int order, double z) {
  if (order < 0) throw DomainError("bessel_k_log_derivative: order < 0");
  if (!(z > 0.0)) throw DomainError("bessel_k_log_derivative: argument <= 0");
  const double k0 = bessel_k_scaled(0, z);
  const double k1 = bessel_k_scaled(1, z);
  if (order == 0) return -k1 / k0;
  double ratio = k1 / k0;  // K_m / K_{m-1} at m = 1
  for (int m = 1; m < order; ++m) ratio = 1.0 / ratio + 2.0 * m / z;
  return -1.0 / ratio - order / z;
}

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) ||
      (abs_tol == 0.0 && rel_tol == 0.0)) {
    throw DomainError("QuadratureSpec: need a positive tolerance");
  }
  if (max_subdivisions < 1) {
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv1[7], fv2[7];
  const double fc = f(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(centre - dx);
    fv2[j] = f(centre + dx);
    const double s = fv1[j] + fv2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  if (!std::isfinite(value)) {
    throw NumericalError("integrate_radial: non-finite integrand on [" +
                         std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return {a, b, value, err};
}

}  // namespace

double integrate_radial(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw DomainError("integrate_radial: need a < b");
  if (!std::isfinite(a)) throw DomainError("integrate_radial: a must be finite");

  std::function<double(double)> g = f;
  double lo = a, hi = b;
  if (std::isinf(b)) {
    g = [&f, a](double t) {
      const double om = 1.0 - t;
      return f(a + t / om) / (om * om);
    };
    lo = 0.0;
    hi = 1.0;
  }

  std::priority_queue<Segment> heap;
  Segment first = kronrod15(g, lo, hi);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  std::size_t count = 1;

  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (total_err > target()) {
    if (count >= spec.max_subdivisions) {
      throw NumericalError("integrate_radial: no convergence after " +
                           std::to_string(count) + " subdivisions (error estimate " +
                           std::to_string(total_err) + ")");
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("integrate_radial: interval underflow near " +
                           std::to_string(mid));
    }
    Segment left = kronrod15(g, worst.a, mid);
    Segment right = kronrod15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

}  // namespace alphadisk
