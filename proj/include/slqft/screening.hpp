#pragma once

#include <complex>
#include <functional>

#include "slqft/parallel.hpp"

namespace slqft {

/// Couplings of the screened model: a vector meson of mass m coupled to a
/// selfcoupled real scalar of mass M with strength g.
struct ScreenedModelParams {
  double g = 1.0;
  double m = 1.0;
  double M = 1.0;

  void validate() const;  // m > 0, M >= 0
};

/// Interaction vertices
///   g m A.A R  -  (g M^2 / 2m) R^3  +  (g^2/2) A.A R^2  -  (g^2 M^2 / 8m^2) R^4
/// and the composite field map R + (g/2m) R^2. All five are rational in
/// (g, m, M) and are produced exactly.
struct VertexCoefficients {
  double aar = 0.0;        // g m
  double rrr = 0.0;        // -g M^2 / 2m
  double aarr = 0.0;       // g^2 / 2
  double rrrr = 0.0;       // -g^2 M^2 / 8m^2
  double composite = 0.0;  // g / 2m
};

VertexCoefficients screened_vertex_coefficients(const ScreenedModelParams& p);

/// Smooth partial-charge cutoff: identically 1 inside radius, falling to 0
/// across a shell of the given width through a quintic step (C^2 at both
/// seams, monotone nonincreasing).
struct ChargeCutoff {
  double radius = 1.0;
  double shell = 0.125;

  void validate() const;
  double profile(double r) const;
  /// 3D Fourier transform 4 pi int f(r) sinc(kr) r^2 dr; the inner ball is
  /// closed-form, the shell is panel quadrature resolved against kr
  double transform(double k) const;
};

struct ChargeValue {
  double value = 0.0;
  double err = 0.0;
};

/// One-boson-pole contribution to |Q_{R,dR} vacuum|^2 for a spontaneously
/// broken current with order parameter v and boson mass mu:
///   v^2 int d^3p (omega/2) |fhat(p)|^2,  omega = sqrt(mu^2 + p^2).
/// For mu = 0 the self-similar family shell = radius/8 grows exactly like
/// radius^2; a massive boson does not tame the growth (the volume term
/// wins), which the tests document.
ChargeValue goldstone_charge_norm(const ChargeCutoff& c, double mu, double v,
                                  Exec exec = Exec::openmp);

/// Radial Gaussian one-particle wavepacket on the mass shell, truncated at
/// five sigma. normalized() scales it so int d^3p/(2 omega) |psi|^2 = 1.
struct ShellWavePacket {
  double mass = 1.0;
  double p0 = 1.0;
  double sigma = 0.2;
  double amp = 1.0;

  static ShellWavePacket normalized(double mass, double p0, double sigma);
  double operator()(double p) const;
  double lo() const;
  double hi() const;
};

/// Shell inner product int d^3p/(2 omega) conj(psi1) psi2 (equal masses).
double packet_overlap(const ShellWavePacket& a, const ShellWavePacket& b);

/// Current form factor F(k^2) with its screening class. The class must
/// match the value at k^2 = 0: screened means F(0) = 0.
struct FormFactor {
  enum class Kind { unscreened, screened };
  Kind kind = Kind::unscreened;
  std::function<double(double)> eval;

  void validate() const;
  static FormFactor unit(double charge = 1.0);
  /// F(s) = s / (s - lambda^2): vanishes at s = 0, smooth on the spacelike
  /// arguments reached by equal-mass shell momenta
  static FormFactor screened_pole(double lambda);
};

struct ChargeME {
  std::complex<double> value{0.0, 0.0};
  double err = 0.0;
};

/// Partial-charge matrix element between shell wavepackets,
///   (2/(2pi)^3) intint dmu(p) dmu(q) conj(psi1(p)) psi2(q)
///       fhat(pvec - qvec) ((omega_p + omega_q)/2) F((p - q)^2),
/// normalized so that F == 1 with radius -> infinity reproduces
/// <psi1|psi2>. Radial packets reduce the six-dimensional integral to
/// (p, q, |pvec - qvec|) exactly.
ChargeME screened_charge_matrix_element(const ChargeCutoff& c, const FormFactor& F,
                                        const ShellWavePacket& psi1,
                                        const ShellWavePacket& psi2,
                                        Exec exec = Exec::openmp);

}  // namespace slqft
