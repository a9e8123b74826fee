#pragma once

#include <array>

#include "slqft/fourvector.hpp"

namespace slqft {

/// Geometry of one string-localized smearing: a Euclidean 4-ball of
/// spacetime support plus a spatial cone of string directions attached to
/// every point of it.
struct StringConfig {
  FourVector center{};
  double radius = 1.0;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double half_angle = 0.1;
};

/// True iff every point of (support_1 + R+ cone_1) is spacelike to every
/// point of (support_2 + R+ cone_2), with at least extra_margin of Euclidean
/// clearance from the light cone. Exact up to the stated margin: ball and
/// cone spread are absorbed into a Lipschitz bound on the cone distance,
/// and the remaining central-ray problem is convex per time-sign.
bool strings_spacelike_separated(const StringConfig& c1, const StringConfig& c2,
                                 double extra_margin = 0.0);

}  // namespace slqft
