#pragma once

#include <string>

#include "core/kernels.hpp"

namespace alphadisk {

// Initial potential vorticity profiles.
//   bump: amplitude cos^2(pi |x - c| / (2 rho)) on |x - c| < rho
//   ring: amplitude cos^2(pi (|x| - r0) / (2 w)) on ||x| - r0| < w
//   zero: identically 0
struct VorticitySpec {
  enum class Kind { bump, ring, zero };

  Kind kind = Kind::bump;
  double amplitude = 1.0;
  Point2 centre{1.0, 0.0};
  double radius = 0.4;
  double ring_radius = 1.0;
  double ring_width = 0.3;

  void validate() const;
  double value(Point2 x) const;
  // Smallest and largest |x| over the support.
  double inner_radius() const;
  double outer_radius() const;
  // Exact integral of the profile over the plane.
  double exact_mass() const;
};

VorticitySpec::Kind parse_vorticity_kind(const std::string& name);
std::string to_string(VorticitySpec::Kind kind);

}  // namespace alphadisk
