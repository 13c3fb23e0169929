#include "doctest.h"

#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/specfun.hpp"

using namespace alphadisk;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("reference values") {
  CHECK(bessel_i(0, 0.0) == 1.0);
  CHECK(bessel_i(1, 0.0) == 0.0);
  CHECK(rel(bessel_i(0, 1.0), 1.2660658777520084) < 1e-13);
  CHECK(rel(bessel_k(0, 1.0), 0.42102443824070834) < 1e-13);
  CHECK(rel(bessel_k(1, 0.1), 9.8538447808706056) < 1e-13);
  CHECK(rel(bessel_k(1, 2.0), 0.13986588181652243) < 1e-13);
}

TEST_CASE("large argument asymptotics") {
  const double z = 50.0;
  const double lead = bessel_k(0, z) * std::exp(z) * std::sqrt(2.0 * z / M_PI);
  CHECK(std::abs(lead - 1.0) < 1e-2);
  CHECK(rel(bessel_k_scaled(0, z), bessel_k(0, z) * std::exp(z)) < 1e-12);
  CHECK(rel(bessel_i_scaled(1, 20.0), bessel_i(1, 20.0) * std::exp(-20.0)) < 1e-12);
  CHECK(std::isfinite(bessel_i_scaled(0, 1e4)));
  CHECK(bessel_k(0, 700.0) > 0.0);
}

TEST_CASE("Wronskian on a log grid") {
  double worst = 0.0;
  for (double z = 1e-6; z <= 50.0; z *= 1.1) {
    const double w = bessel_i(0, z) * bessel_k(1, z) + bessel_i(1, z) * bessel_k(0, z);
    worst = std::max(worst, rel(w, 1.0 / z));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("derivative identities and monotonicity") {
  for (double z : {0.05, 0.3, 1.0, 2.5, 7.0, 20.0}) {
    const double h = 1e-5 * z;
    const double dk0 = (bessel_k(0, z + h) - bessel_k(0, z - h)) / (2 * h);
    const double di0 = (bessel_i(0, z + h) - bessel_i(0, z - h)) / (2 * h);
    CHECK(rel(dk0, -bessel_k(1, z)) < 1e-6);
    CHECK(rel(di0, bessel_i(1, z)) < 1e-6);
  }
  double prev_k0 = bessel_k(0, 1e-3), prev_k1 = bessel_k(1, 1e-3);
  double prev_i0 = bessel_i(0, 1e-3), prev_i1 = bessel_i(1, 1e-3);
  for (double z = 1.2e-3; z < 40.0; z *= 1.2) {
    CHECK(bessel_k(0, z) < prev_k0);
    CHECK(bessel_k(1, z) < prev_k1);
    CHECK(bessel_i(0, z) > prev_i0);
    CHECK(bessel_i(1, z) > prev_i1);
    prev_k0 = bessel_k(0, z);
    prev_k1 = bessel_k(1, z);
    prev_i0 = bessel_i(0, z);
    prev_i1 = bessel_i(1, z);
  }
}

TEST_CASE("crossover continuity") {
  for (double z : {2.0, 30.0}) {
    for (int order : {0, 1}) {
      const double below = order ? bessel_k(1, std::nextafter(z, 0.0)) : bessel_k(0, std::nextafter(z, 0.0));
      CHECK(rel(below, bessel_k(order, z)) < 1e-12);
      CHECK(rel(bessel_i(order, std::nextafter(z, 0.0)), bessel_i(order, z)) < 1e-12);
    }
  }
}

TEST_CASE("one minus z K1 and log derivative") {
  const double z[5] = {1e-6, 1e-3, 0.1, 1.0, 5.0};
  const double ref[5] = {7.2157210368122921e-12, 3.761843914425722e-6, 0.014615521912939387,
                         0.39809276980276543, 0.97977693277273918};
  for (int k = 0; k < 5; ++k) CHECK(rel(one_minus_z_k1(z[k]), ref[k]) < 1e-13);
  CHECK(one_minus_z_k1(1e-6) > 0.0);
  for (int n : {0, 1, 2, 5}) {
    const double z = 1.7, h = 1e-5;
    auto kn = [n](double x) {
      double km = bessel_k(0, x), k = bessel_k(1, x);
      if (n == 0) return km;
      for (int m = 1; m < n; ++m) {
        const double next = km + 2.0 * m / x * k;
        km = k;
        k = next;
      }
      return k;
    };
    const double fd = (std::log(kn(z + h)) - std::log(kn(z - h))) / (2 * h);
    CHECK(rel(bessel_k_log_derivative(n, z), fd) < 1e-7);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_i(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_i(2, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1, -2.0), DomainError);
}

TEST_CASE("radial quadrature") {
  CHECK(std::abs(integrate_radial([](double s) { return s; }, 0.0, 1.0) - 0.5) < 1e-14);
  const double inf = std::numeric_limits<double>::infinity();
  const double all = integrate_radial([](double s) { return s * bessel_k(0, s); }, 0.0, inf);
  CHECK(std::abs(all - 1.0) < 1e-11);
  const double part = integrate_radial([](double s) { return s * bessel_k(0, s); }, 0.0, 2.0);
  CHECK(std::abs(part - (1.0 - 2.0 * bessel_k(1, 2.0))) < 1e-12);
  const double logsing = integrate_radial([](double s) { return std::log(s); }, 0.0, 1.0);
  CHECK(std::abs(logsing + 1.0) < 1e-11);
}

TEST_CASE("quadrature failure is reported") {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  auto wild = [](double s) { return std::sin(1.0 / (s + 1e-4)); };
  CHECK_THROWS_AS(integrate_radial(wild, 0.0, 1.0, spec), NumericalError);
  spec.abs_tol = -1.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}

}
