#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "slqft/fourvector.hpp"

namespace slqft {

/// One node of the invariant mass-shell measure d^3p / (2 omega).
struct ShellNode {
  FourVector p;     // on-shell (omega, pvec)
  double w;         // full weight including r^2 / (2 omega) and solid angle
  std::size_t ang;  // index into the shared angular grid
};

/// Grid shape, kept so refinement rebuilds the same family.
struct ShellSpec {
  double mass = 0.0;
  double pmax = 0.0;
  std::size_t nr = 0;
  std::size_t nphi = 0;
  std::size_t ntheta = 0;  // plain grid only
  bool banded = false;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double band_half_angle = 0.0;
  std::size_t n_out = 0;   // polar nodes per panel outside the band
  std::size_t n_band = 0;  // polar nodes per panel inside the band
};

/// Product quadrature: radial Gauss-Legendre on [0, pmax] times a sphere
/// grid (Gauss-Legendre in cos(theta), uniform even-count phi). The phi
/// grid maps onto itself under pvec -> -pvec.
///
/// The banded variant splits the polar integration at the collar
/// |theta - pi/2| <= band_half_angle around a given axis, with nodes
/// clustered toward the collar edges by a sqrt substitution. Use it when
/// the integrand has cusps on the cones theta = pi/2 -+ band_half_angle,
/// as string moments do when the band covers the smearing caps.
struct ShellQuadrature {
  double mass = 0.0;
  double pmax = 0.0;
  std::size_t n_ang = 0;
  std::vector<std::array<double, 3>> directions;  // unit vectors per angular index
  std::vector<ShellNode> nodes;
  ShellSpec spec;

  static ShellQuadrature make(double mass, double pmax, std::size_t nr,
                              std::size_t ntheta, std::size_t nphi);

  static ShellQuadrature make_banded(double mass, double pmax, std::size_t nr,
                                     std::size_t n_out, std::size_t n_band,
                                     std::size_t nphi, const std::array<double, 3>& axis,
                                     double band_half_angle);

  /// Same family, ~1.4x nodes per dimension, radial span scaled by
  /// pmax_factor (at fixed node density). For quadrature error estimates;
  /// pmax_factor > 1 makes the refinement see radial truncation too.
  ShellQuadrature refined(double pmax_factor = 1.0) const;
};

}  // namespace slqft
