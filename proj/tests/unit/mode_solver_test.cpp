#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "core/error.hpp"
#include "core/mode_solver.hpp"
#include "core/radial_exterior.hpp"
#include "core/radial_fd.hpp"

using namespace alphadisk;

namespace {

using cd = std::complex<double>;

double bump(Point2 x, Point2 c, double rho) {
  const double d = (x - c).norm();
  if (d >= rho) return 0.0;
  const double s = std::cos(M_PI * d / (2 * rho));
  return s * s;
}

PolarGrid small_grid() {
  PolarGrid g;
  g.eps = 0.1;
  g.r_max = 8.0;
  g.n_r = 400;
  g.n_theta = 64;
  return g;
}

// Relative discrete L2 distance of the mode-0 azimuthal profile from w3.
double oracle_error(int n_r) {
  PolarGrid g;
  g.eps = 0.1;
  g.r_max = 10.0;
  g.n_r = n_r;
  g.n_theta = 16;
  const FilterParams p{1.0, 0.1, 1.0, 0.0};
  const ModeSolver solver(g, 1.0, 4);
  const ModeField u = solver.filtered_velocity(PolarField(g), 1.0);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.r.size(); ++i) {
    const double e = filtered_harmonic(u.r[i], p);
    const double d = u.u_theta[0][i].real() - e;
    const double w = (i + 1 < u.r.size() ? u.r[i + 1] - u.r[i] : 0.0) +
                     (i > 0 ? u.r[i] - u.r[i - 1] : 0.0);
    num += d * d * u.r[i] * w;
    den += e * e * u.r[i] * w;
  }
  return std::sqrt(num / den);
}

// int K_eps(x, y) q(y) dy by the trapezoid rule on the grid.
Point2 image_integral(const PolarField& q, Point2 x) {
  Point2 acc{0.0, 0.0};
  const double dth = 2 * M_PI / q.n_theta();
  for (int a = 0; a + 1 < q.n_r(); ++a) {
    const double dr = q.r[a + 1] - q.r[a];
    for (int b = 0; b < q.n_theta(); ++b) {
      for (int s = 0; s < 2; ++s) {
        const double v = q.at(a + s, b);
        if (v != 0.0) {
          acc = acc + image_kernel(x, q.point(a + s, b), q.grid.eps) *
                          (0.5 * v * q.r[a + s] * dr * dth);
        }
      }
    }
  }
  return acc;
}

}  // namespace

TEST_SUITE("polar_grid") {

TEST_CASE("grid construction") {
  PolarGrid g = small_grid();
  const auto r = g.radii();
  CHECK(r.size() == 400);
  CHECK(r.front() == 0.1);
  CHECK(r.back() == doctest::Approx(8.0).epsilon(1e-15));
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);

  PolarGrid c{0.1, 3.0, 201, 2.0, 256, 0.5};
  const auto rc = c.radii();
  CHECK(rc.front() == 0.1);
  CHECK(rc.back() == doctest::Approx(3.0));
  for (std::size_t i = 1; i < rc.size(); ++i) CHECK(rc[i] > rc[i - 1]);
  // The outer block does not depend on eps.
  PolarGrid c2 = c;
  c2.eps = 0.05;
  const auto rc2 = c2.radii();
  CHECK(std::equal(rc.end() - 200, rc.end(), rc2.end() - 200));

  g.n_theta = 48;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = small_grid();
  g.n_r = 8;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g = small_grid();
  g.r_max = 0.05;
  CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("analysis and synthesis") {
  PolarGrid g = small_grid();
  PolarField constant(g, [](Point2) { return 2.0; });
  const ModeCoefficients a = analyze(constant, 8);
  for (int n = 1; n <= 8; ++n) CHECK(std::abs(a.coeffs[n][5]) < 1e-15);
  CHECK(std::abs(a.coeffs[0][5] - cd(2.0)) < 1e-15);

  PolarField cosine(g, [](Point2 x) { return x.x1 / x.norm(); });
  const ModeCoefficients b = analyze(cosine, 8);
  CHECK(std::abs(b.coeffs[1][7] - cd(0.5)) < 1e-15);
  for (int n : {0, 2, 3, 8}) CHECK(std::abs(b.coeffs[n][7]) < 1e-15);
  CHECK_FALSE(b.aliasing_warning);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  PolarField noise(g);
  for (double& v : noise.values) v = nd(rng);
  const int full = g.n_theta / 2 - 1;
  const ModeCoefficients c = analyze(noise, full);
  CHECK(c.aliasing_warning);
  CHECK(c.dropped_fraction > 1e-8);
  // Round trip of a band-limited field, and Parseval.
  const auto back = synthesize(c.coeffs, g.n_theta);
  PolarField band(g);
  for (int i = 0; i < band.n_r(); ++i)
    for (int j = 0; j < g.n_theta; ++j) band.at(i, j) = back[i][j];
  const ModeCoefficients d = analyze(band, full);
  const auto again = synthesize(d.coeffs, g.n_theta);
  double worst = 0.0, energy_grid = 0.0, energy_modes = 0.0;
  for (int j = 0; j < g.n_theta; ++j) {
    worst = std::max(worst, std::abs(again[3][j] - back[3][j]));
    energy_grid += back[3][j] * back[3][j] / g.n_theta;
  }
  energy_modes = std::norm(d.coeffs[0][3]);
  for (int n = 1; n <= full; ++n) energy_modes += 2 * std::norm(d.coeffs[n][3]);
  CHECK(worst < 1e-12);
  CHECK(std::abs(energy_grid - energy_modes) < 1e-12 * energy_grid);
  CHECK_THROWS_AS(analyze(noise, g.n_theta / 2), DomainError);
}

TEST_CASE("quadrature on the grid") {
  PolarGrid g = small_grid();
  g.n_r = 800;
  PolarField q(g, [](Point2 x) { return bump(x, {1.0, 0.0}, 0.4); });
  const double exact = 0.4 * 0.4 * (M_PI * M_PI - 4.0) / (2.0 * M_PI);
  CHECK(std::abs(q.mass() - exact) < 5e-4 * exact);
  CHECK(q.max_abs() <= 1.0);
  CHECK(std::abs(q.integrate([](Point2) { return 1.0; }) - q.mass()) < 1e-15);
}

}

TEST_SUITE("mode_solver") {

TEST_CASE("harmonic oracle and second-order convergence") {
  const double e1 = oracle_error(1024), e2 = oracle_error(2048), e3 = oracle_error(4096);
  CHECK(e2 < 1e-5);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.125));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("trivial and radial sources") {
  const PolarGrid g = small_grid();
  const ModeSolver solver(g, 1.0, 8);
  const ModeField zero = solver.filtered_velocity(PolarField(g), 0.0);
  for (int n = 0; n <= 8; ++n)
    for (std::size_t i = 0; i < zero.r.size(); ++i) {
      CHECK(zero.u_r[n][i] == cd(0.0));
      CHECK(zero.u_theta[n][i] == cd(0.0));
    }

  PolarField ring(g, [](Point2 x) {
    const double d = std::abs(x.norm() - 1.0);
    return d < 0.3 ? std::pow(std::cos(M_PI * d / 0.6), 2) : 0.0;
  });
  const ModeField u = solver.filtered_velocity(ring, 0.0);
  double ur = 0.0, ut = 0.0;
  for (int n = 0; n <= 8; ++n)
    for (std::size_t i = 0; i < u.r.size(); ++i) {
      ur = std::max(ur, std::abs(u.u_r[n][i]));
      if (n > 0) ut = std::max(ut, std::abs(u.u_theta[n][i]));
    }
  CHECK(ur < 1e-14);
  CHECK(ut < 1e-14);
  CHECK(std::abs(u.params.mass - ring.mass()) < 1e-15);
}

TEST_CASE("no-slip, divergence and linearity") {
  const PolarGrid g = small_grid();
  const ModeSolver solver(g, 1.0, 16);
  PolarField q1(g, [](Point2 x) { return bump(x, {1.0, 0.2}, 0.4); });
  PolarField q2(g, [](Point2 x) { return -0.5 * bump(x, {-0.5, 1.2}, 0.3); });
  PolarField sum(g);
  for (std::size_t k = 0; k < sum.values.size(); ++k) sum.values[k] = q1.values[k] + q2.values[k];

  const ModeField u = solver.filtered_velocity(sum, 0.7);
  const GridVelocity v = velocity_on_grid(u);
  double umax = 0.0, wall = 0.0;
  for (std::size_t k = 0; k < v.u_r.size(); ++k)
    umax = std::max(umax, std::hypot(v.u_r[k], v.u_theta[k]));
  for (int j = 0; j < g.n_theta; ++j) wall = std::max(wall, std::hypot(v.u_r[j], v.u_theta[j]));
  CHECK(wall <= 1e-6 * umax);

  double div = 0.0, norm = 0.0;
  for (int n = 0; n <= 16; ++n) {
    ComplexProfile rur(u.r.size());
    for (std::size_t i = 0; i < u.r.size(); ++i) rur[i] = u.r[i] * u.u_r[n][i];
    const ComplexProfile d = radial_derivative(u.r, rur);
    for (std::size_t i = 1; i + 1 < u.r.size(); ++i) {
      const cd dv = (d[i] + cd(0.0, n) * u.u_theta[n][i]) / u.r[i];
      div = std::max(div, std::abs(dv));
      norm = std::max(norm, std::abs(u.u_theta[n][i]));
    }
  }
  CHECK(div <= 1e-6 * norm);

  const ModeField a = solver.filtered_velocity(q1, 0.0);
  const ModeField b = solver.filtered_velocity(q2, 0.0);
  const ModeField c = solver.filtered_velocity(sum, 0.0);
  double gap = 0.0, size = 0.0;
  for (int n = 0; n <= 16; ++n)
    for (std::size_t i = 0; i < c.r.size(); ++i) {
      gap = std::max(gap, std::abs(a.u_theta[n][i] + b.u_theta[n][i] - c.u_theta[n][i]));
      gap = std::max(gap, std::abs(a.u_r[n][i] + b.u_r[n][i] - c.u_r[n][i]));
      size = std::max(size, std::abs(c.u_theta[n][i]));
    }
  CHECK(gap <= 1e-12 * size);
}

TEST_CASE("point evaluation") {
  PolarGrid g;
  g.eps = 0.1;
  g.r_max = 10.0;
  g.n_r = 1024;
  g.n_theta = 16;
  const ModeSolver solver(g, 1.0, 4);
  const ModeField u = solver.filtered_velocity(PolarField(g), 1.0);
  const auto v = eval_velocity(u, {{1.0, 0.0}, {0.0, -1.0}, {0.1, 0.0}});
  CHECK(std::abs(v[0].x2 - 0.061937549172100499) < 1e-6);
  CHECK(std::abs(v[0].x1) < 1e-15);
  CHECK(std::abs(v[1].x1 - 0.061937549172100499) < 1e-6);
  CHECK(v[2].norm() < 1e-6 * v[0].norm());
  CHECK_THROWS_AS(eval_velocity(u, {{0.05, 0.0}}), DomainError);
  CHECK_THROWS_AS(eval_velocity(u, {{11.0, 0.0}}), DomainError);

  PolarGrid h = small_grid();
  const ModeSolver s2(h, 1.0, 8);
  PolarField q(h, [](Point2 x) { return bump(x, {1.0, 0.3}, 0.4); });
  const ModeField w = s2.filtered_velocity(q, 0.5);
  const GridVelocity gv = velocity_on_grid(w);
  PolarField probe(h);
  const int i = 150, j = 9;
  const Point2 x = probe.point(i, j);
  const Point2 e = eval_velocity(w, {x})[0];
  const double th = h.theta(j);
  const std::size_t k = static_cast<std::size_t>(i) * h.n_theta + j;
  const Point2 expect{gv.u_r[k] * std::cos(th) - gv.u_theta[k] * std::sin(th),
                      gv.u_r[k] * std::sin(th) + gv.u_theta[k] * std::cos(th)};
  CHECK((e - expect).norm() < 1e-13);
}

TEST_CASE("circulation of the unfiltered velocity") {
  // Near the obstacle the circulation is gamma; around the whole source it
  // is gamma + m.
  PolarGrid g = small_grid();
  g.n_r = 1600;
  g.r_max = 12.0;
  const double gamma = 0.5;
  const ModeSolver solver(g, 1.0, 8);
  PolarField q(g, [](Point2 x) { return bump(x, {1.5, 0.0}, 0.4); });
  const ModeField u = solver.filtered_velocity(q, gamma);
  const double m = u.params.mass;
  auto circ = [&](std::size_t i) { return 2 * M_PI * u.r[i] * unfiltered_azimuthal(u, i); };
  std::size_t inner = 1, outer = 0;
  while (u.r[outer] < 6.0) ++outer;
  CHECK(std::abs(circ(inner) - gamma) < 1e-3 * (gamma + m));
  CHECK(std::abs(circ(outer) - (gamma + m)) < 1e-3 * (gamma + m));
}

TEST_CASE("circulation and point vortex enter differently") {
  // T(q) with circulation gamma is not T(0) with circulation gamma + m.
  const PolarGrid g = small_grid();
  const ModeSolver solver(g, 1.0, 8);
  PolarField q(g, [](Point2 x) { return bump(x, {1.0, 0.0}, 0.4); });
  const ModeField a = solver.filtered_velocity(q, 1.0);
  const ModeField b = solver.filtered_velocity(PolarField(g), 1.0 + a.params.mass);
  const auto va = eval_velocity(a, {{1.2, 0.0}, {0.5, 0.5}});
  const auto vb = eval_velocity(b, {{1.2, 0.0}, {0.5, 0.5}});
  CHECK((va[0] - vb[0]).norm() > 1e-2 * va[0].norm());
  CHECK((va[1] - vb[1]).norm() > 1e-2 * va[1].norm());
  // Far away the axisymmetric part depends on beta only.
  std::size_t i = 0;
  while (a.r[i] < 7.0) ++i;
  const double ua = a.u_theta[0][i].real(), ub = b.u_theta[0][i].real();
  CHECK(std::abs(ua - ub) < 1e-3 * std::abs(ua));
}

TEST_CASE("exterior Poisson problem") {
  PolarGrid g = small_grid();
  g.n_r = 800;
  g.n_theta = 256;
  const int n_modes = 64;
  const ModeSolver solver(g, 1.0, n_modes);
  const auto& r = solver.radii();

  const ComplexProfile zero(r.size());
  for (int n : {0, 1, 5}) {
    const ComplexProfile xi = solver.exterior_poisson(n, zero);
    for (const cd& v : xi) CHECK(v == cd(0.0));
  }

  // Mode 0: boundary circulation of grad-perp xi equals minus the mass.
  PolarField radial(g, [](Point2 x) {
    const double d = std::abs(x.norm() - 1.0);
    return d < 0.3 ? std::pow(std::cos(M_PI * d / 0.6), 2) : 0.0;
  });
  const ModeCoefficients rc = analyze(radial, n_modes);
  const ComplexProfile xi0 = solver.exterior_poisson(0, rc.coeffs[0]);
  const ComplexProfile d0 = radial_derivative(r, xi0);
  CHECK(std::abs(2 * M_PI * r[0] * d0[0].real() + radial.mass()) < 1e-3 * radial.mass());
  std::size_t beyond = 0;
  while (r[beyond] < 2.0) ++beyond;
  CHECK(std::abs(2 * M_PI * r[beyond] * d0[beyond].real()) < 1e-4 * radial.mass());

  // Narrow blob: grad-perp of the mode solution against the image-kernel integral.
  PolarField blob(g, [](Point2 x) { return bump(x, {1.0, 0.2}, 0.15); });
  const ModeCoefficients bc = analyze(blob, n_modes);
  std::vector<ComplexProfile> xi(n_modes + 1), dxi(n_modes + 1);
  for (int n = 0; n <= n_modes; ++n) {
    xi[n] = solver.exterior_poisson(n, bc.coeffs[n]);
    dxi[n] = radial_derivative(r, xi[n]);
  }
  std::size_t probes[3] = {0, 0, 0};
  const double radii[3] = {0.3, 2.0, 3.5};
  for (int k = 0; k < 3; ++k)
    while (r[probes[k]] < radii[k]) ++probes[k];
  const int angles[3] = {100, 40, 200};
  for (int k = 0; k < 3; ++k) {
    const std::size_t i = probes[k];
    const double th = g.theta(angles[k]);
    double ur = 0.0, ut = 0.0;
    for (int n = 0; n <= n_modes; ++n) {
      const cd e = std::exp(cd(0.0, n * th));
      const double w = n == 0 ? 1.0 : 2.0;
      ur += w * (-cd(0.0, n) * xi[n][i] / r[i] * e).real();
      ut += w * (dxi[n][i] * e).real();
    }
    const Point2 x{r[i] * std::cos(th), r[i] * std::sin(th)};
    const Point2 mode{ur * std::cos(th) - ut * std::sin(th), ur * std::sin(th) + ut * std::cos(th)};
    const Point2 direct = image_integral(blob, x);
    CHECK((mode - direct).norm() < 1e-3 * direct.norm());
  }
  CHECK_THROWS_AS(solver.exterior_poisson(n_modes + 1, zero), DomainError);
}

TEST_CASE("gradient norm of the inverse Laplacian") {
  const PolarGrid g = small_grid();
  const ModeSolver solver(g, 1.0, 8);
  CHECK(solver.poisson_gradient_norm(analyze(PolarField(g), 8)) == 0.0);
  PolarField q(g, [](Point2 x) { return bump(x, {1.0, 0.0}, 0.4); });
  PolarField q2(g, [](Point2 x) { return 2.0 * bump(x, {1.0, 0.0}, 0.4); });
  const double a = solver.poisson_gradient_norm(analyze(q, 8));
  CHECK(a > 0.0);
  CHECK(solver.poisson_gradient_norm(analyze(q2, 8)) == doctest::Approx(2 * a).epsilon(1e-12));
}

TEST_CASE("argument checks") {
  PolarGrid g = small_grid();
  CHECK_THROWS_AS(ModeSolver(g, 0.0, 4), DomainError);
  CHECK_THROWS_AS(ModeSolver(g, 1.0, 40), DomainError);
  const ModeSolver solver(g, 1.0, 4);
  PolarGrid other = g;
  other.n_r = 300;
  CHECK_THROWS_AS(solver.filtered_velocity(PolarField(other), 0.0), DomainError);
  const FilterParams wrong{1.0, 0.2, 1.0, 0.0};
  CHECK_THROWS_AS(filtered_velocity(PolarField(g), wrong, 4), DomainError);
}

}
