#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "slqft/fourvector.hpp"
#include "slqft/parallel.hpp"
#include "slqft/testfunction.hpp"

namespace slqft {

/// Wedge region: the image g W0 + a of the reference wedge
/// W0 = {x : x^3 > |x^0|} under a proper orthochronous transform.
struct Wedge {
  Lorentz lam = Lorentz::identity();
  FourVector shift{};

  static Wedge standard() { return Wedge{}; }
  /// Causal complement of W0: the pi rotation about x maps x^3 -> -x^3.
  static Wedge opposite();
  /// g W + a.
  Wedge transformed(const Lorentz& g, const FourVector& a) const;
  /// Throws unless lam is proper orthochronous within 1e-12.
  void validate() const;
};

/// Momentum grid in wedge coordinates: rapidity theta along the wedge
/// boost, polar transverse momentum. Measure d^3p/(2 omega) =
/// (1/2) dtheta d^2p_perp.
struct ModularGrid {
  std::vector<double> theta, wtheta;  // Gauss-Legendre on [-theta_max, theta_max]
  std::vector<double> rho, wrho;      // GL on [0, rho_max], weight includes rho
  std::size_t nphi = 0;

  static ModularGrid make(double theta_max, std::size_t ntheta, double rho_max,
                          std::size_t nrho, std::size_t nphi);
  std::size_t size() const { return theta.size() * rho.size() * nphi; }
  /// Full measure weight of node (itheta, irho, any phi).
  double weight(std::size_t itheta, std::size_t irho) const;
};

/// Positive-frequency scalar wave function of mass m > 0 in the
/// coordinates of a wedge: psi(theta, pperp) = fhat(P) pulled back
/// through the wedge map, entire in theta for compactly supported f.
/// The modular operations act by composition:
///   boosted(t)    Delta^{it}: theta -> theta + 2 pi t
///   conjugated()  J: antilinear, pperp -> -pperp
///   tomita()      S = J Delta^{1/2}: theta -> conj(theta) - i pi with
///                 conjugation, pperp -> -pperp
/// For real f the identity S psi = psi holds pointwise at every momentum;
/// wedge support is a domain statement, visible only in strip norms.
class ModularWave {
 public:
  ModularWave(const TestFunction& f, double mass, const Wedge& w);

  ModularWave boosted(double t) const;
  ModularWave conjugated() const;
  ModularWave tomita() const;

  cplx value(cplx theta, double px, double py) const;

  /// psi(theta - i strip) on every grid node, theta-major then rho then
  /// phi. finite goes false when the continuation overflows.
  struct Sweep {
    std::vector<cplx> v;
    bool finite = true;
  };
  Sweep strip_values(const ModularGrid& grid, double strip, Exec exec = Exec::serial) const;

  double mass() const { return mass_; }

 private:
  ModularWave continued(cplx dtheta) const;
  cplx base(cplx theta, double px, double py) const;

  TestFunction f_;
  double mass_ = 1.0;
  Wedge w_;
  cplx shift_{0.0, 0.0};
  bool conj_ = false;
  bool flip_ = false;
};

/// N(strip)^2 = int |psi(theta - i strip)|^2 dmu. Returns +inf when the
/// continuation overflows.
double norm2(const ModularWave& psi, const ModularGrid& grid, double strip = 0.0,
             Exec exec = Exec::serial);

cplx inner(const ModularWave& a, const ModularWave& b, const ModularGrid& grid,
           Exec exec = Exec::serial);

/// Wedge membership diagnostics for psi_f. boundary_residual is
/// ||S psi - psi|| / ||psi|| on the real grid (pointwise ~0 for any real
/// f, kept for honesty); strip_ratio is N(pi/2)/sqrt(N(0) N(pi)), <= 1
/// exactly when log N is midpoint-convex on the strip, which holds for
/// wedge-supported f (three-lines) and fails like e^{2 theta_0} for
/// supports displaced out of the wedge.
struct KspaceDiagnostics {
  double boundary_residual = 0.0;
  double strip_ratio = 0.0;
  double combined = 0.0;  // max(boundary_residual, strip_ratio - 1)
  bool diverged = false;
};

KspaceDiagnostics kspace_residual(const TestFunction& f, double mass, const Wedge& w,
                                  const ModularGrid& grid, Exec exec = Exec::serial);

}  // namespace slqft
