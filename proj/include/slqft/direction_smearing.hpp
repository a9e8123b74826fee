#pragma once

#include <array>
#include <vector>

#include "slqft/fourvector.hpp"

namespace slqft {

/// Smooth cap of spatial string directions: plateau-bump profile in
/// theta/half_angle about the axis, given in the cap's base frame and
/// optionally transported by a Lorentz frame. Total weight normalized to 1.
struct DirectionCap {
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double half_angle = 0.3;
  Lorentz frame = Lorentz::identity();
};

/// Evaluates the cap-smeared string moment
///   V^mu(p) = int w(e) e^mu / (p.e + i eps |pvec_base|) dOmega_e
/// with the regulator relative to |pvec| in the base frame, which makes V
/// exactly homogeneous of degree -1 there. Boosted caps pull back:
/// V_lab(p) = L V_base(L^{-1} p). The azimuthal integral is closed-form;
/// the polar integral is split at grazing-incidence points and evaluated
/// with a square-root substitution, so the cost is independent of eps.
class CapSmearing {
 public:
  CapSmearing(const DirectionCap& cap, double rel_eps);

  CFourVector moment(const FourVector& p) const;

  /// True when the frame is a pure rotation (or identity), in which case
  /// the moment factorizes as table[ang] / |pvec|.
  bool supports_angular_table() const { return rotation_only_; }

  /// V at unit |pvec| for each lab direction; scale by 1/|pvec| per shell.
  std::vector<CFourVector> angular_table(
      const std::vector<std::array<double, 3>>& lab_dirs) const;

  double rel_eps() const { return rel_eps_; }

 private:
  CFourVector base_moment_unit(const std::array<double, 3>& phat) const;

  DirectionCap cap_;
  Lorentz inv_frame_;
  double rel_eps_;
  double norm_;
  bool rotation_only_;
};

/// Reference moment by brute-force 2D quadrature over the cap. Slow;
/// intended for validating CapSmearing.
CFourVector cap_moment_brute(const DirectionCap& cap, const FourVector& p, double rel_eps,
                             std::size_t n_theta, std::size_t n_phi);

}  // namespace slqft
