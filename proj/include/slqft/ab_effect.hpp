#pragma once

#include <array>
#include <cstddef>

#include "slqft/parallel.hpp"

namespace slqft {

using Vec3 = std::array<double, 3>;

/// Flat disk in 3-space. normal need not be unit length on input; every
/// operation normalizes its own copy.
struct Disk {
  Vec3 center{0.0, 0.0, 0.0};
  double radius = 1.0;
  Vec3 normal{0.0, 0.0, 1.0};
};

/// Two mollified flux disks. The pairing couples the electric smearing on
/// d1 to the magnetic loop current of d2 (the boundary circle of d2).
///
/// Geometry invariants, enforced by validate():
///  - linked: the boundary of d2 crosses the plane of d1 inside the disk
///    with clearance > 2 eps_ball from the rim, never inside the rim
///    annulus, and the two boundary circles stay > 2 eps_ball apart;
///  - unlinked: no crossings, and each boundary circle keeps distance
///    > 3 eps_ball from the other disk, so the mollified supports are
///    disjoint.
struct DiskFluxConfig {
  Disk d1, d2;
  double eps_ball = 0.25;           // mollifier support radius, both disks
  double mass1 = 1.0, mass2 = 1.0;  // recorded mollifier masses int rho_i
  bool linked = true;

  /// Signed count of boundary-of-d2 passes through the interior of d1
  /// (sign of tangent . n1 at each crossing). Throws if a crossing lands
  /// in the rim annulus |d - R1| <= 2 eps_ball.
  int crossings() const;

  /// Throws std::invalid_argument when the declared linked/unlinked flag
  /// contradicts the geometry or a clearance fails.
  void validate() const;

  static DiskFluxConfig canonical_linked();
  static DiskFluxConfig canonical_unlinked();
};

/// Smoothed disk surface density at x: the mollified surface delta of d,
/// so the smearing current is g(x) = n * disk_smear(d, eps, x). Radial
/// mollifier rho(r) = c (1 - r^2/eps^2)^3 with int rho d^3x = 1.
double disk_smear(const Disk& d, double eps, const Vec3& x);

/// Transform int rho(|x|) e^{i k.x} d^3x of the unit-mass mollifier.
double mollifier_transform(double eps, double k);

struct FluxValue {
  double value = 0.0;
  double err = 0.0;
};

/// int g1 . curl g2 d^3x by position-space quadrature. curl g2 is the
/// mollified boundary line current of d2, so the volume integral collapses
/// to loop x ball coordinates by Fubini. Never touches momentum space;
/// serves as the oracle for the momentum route.
FluxValue flux_commutator_direct(const DiskFluxConfig& cfg, std::size_t nloop = 128,
                                 Exec exec = Exec::openmp);

struct StokesGrid {
  // angular resolution must track the phase exp(i p.(c1-c2)): at pmax 30
  // and center separation ~3 the sphere sees ~190 radians of it
  double pmax = 30.0;
  std::size_t nr = 48, ntheta = 96, nphi = 128;
};

/// Equal-time commutator of the electric smearing on d1 with the line
/// integral of the string potential around the boundary of d2, computed on
/// the momentum shell with time smearing of width tau at levels
/// {tau, tau/2, tau/4} and extrapolated tau -> 0. The closed loop makes
/// the string-dependent kernel terms vanish identically, so the value is
/// e-independent up to roundoff; e must still keep the swept strings out
/// of d1's support whenever the geometry allows it (unlinked configs).
FluxValue stokes_string_flux(const DiskFluxConfig& cfg, const Vec3& e, double tau = 0.2,
                             double eps_string = 1e-3, const StokesGrid& grid = {},
                             Exec exec = Exec::openmp);

/// Same line-integral commutator with the loop potential replaced by its
/// pure-gradient part. A closed loop integrates any gradient to zero, so
/// this measures the quadrature floor of the null claim.
FluxValue pure_gauge_null_contrast(const DiskFluxConfig& cfg, const Vec3& e,
                                   double tau = 0.2, double eps_string = 1e-3,
                                   const StokesGrid& grid = {}, Exec exec = Exec::openmp);

}  // namespace slqft
