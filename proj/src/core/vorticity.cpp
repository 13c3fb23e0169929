#include "core/vorticity.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace alphadisk {

void VorticitySpec::validate() const {
  if (!std::isfinite(amplitude)) throw DomainError("vorticity: amplitude must be finite");
  switch (kind) {
    case Kind::bump:
      if (!(radius > 0.0)) throw DomainError("vorticity: bump radius must be > 0");
      if (!(centre.norm() > radius)) {
        throw DomainError("vorticity: bump support must exclude the origin");
      }
      break;
    case Kind::ring:
      if (!(ring_width > 0.0 && ring_radius > ring_width)) {
        throw DomainError("vorticity: ring must satisfy 0 < width < radius");
      }
      break;
    case Kind::zero:
      break;
  }
}

double VorticitySpec::value(Point2 x) const {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  switch (kind) {
    case Kind::bump: {
      const double d = (x - centre).norm();
      if (d >= radius) return 0.0;
      const double c = std::cos(half_pi * d / radius);
      return amplitude * c * c;
    }
    case Kind::ring: {
      const double d = std::abs(x.norm() - ring_radius);
      if (d >= ring_width) return 0.0;
      const double c = std::cos(half_pi * d / ring_width);
      return amplitude * c * c;
    }
    case Kind::zero:
      return 0.0;
  }
  return 0.0;
}

double VorticitySpec::inner_radius() const {
  switch (kind) {
    case Kind::bump: return centre.norm() - radius;
    case Kind::ring: return ring_radius - ring_width;
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double VorticitySpec::outer_radius() const {
  switch (kind) {
    case Kind::bump: return centre.norm() + radius;
    case Kind::ring: return ring_radius + ring_width;
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double VorticitySpec::exact_mass() const {
  const double pi = std::numbers::pi;
  switch (kind) {
    // int_0^rho cos^2(pi s / 2 rho) 2 pi s ds = rho^2 (pi^2 - 4) / (2 pi)
    case Kind::bump: return amplitude * radius * radius * (pi * pi - 4.0) / (2.0 * pi);
    // int cos^2(pi d / 2w) 2 pi (r0 + d) dd over |d| < w = 2 pi r0 w
    case Kind::ring: return amplitude * 2.0 * pi * ring_radius * ring_width;
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

VorticitySpec::Kind parse_vorticity_kind(const std::string& name) {
  if (name == "bump") return VorticitySpec::Kind::bump;
  if (name == "ring") return VorticitySpec::Kind::ring;
  if (name == "zero") return VorticitySpec::Kind::zero;
  throw DomainError("unknown vorticity profile '" + name + "' (bump, ring, zero)");
}

std::string to_string(VorticitySpec::Kind kind) {
  switch (kind) {
    case VorticitySpec::Kind::bump: return "bump";
    case VorticitySpec::Kind::ring: return "ring";
    case VorticitySpec::Kind::zero: return "zero";
  }
  return "zero";
}

}  // namespace alphadisk
