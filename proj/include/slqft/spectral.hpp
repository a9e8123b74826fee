#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "slqft/direction_smearing.hpp"
#include "slqft/fourvector.hpp"
#include "slqft/parallel.hpp"

namespace slqft {

/// Configuration of the one-loop spectral density of the string-coupled
/// scalar: matter mass, coupling, the two string slots (sharp spatial
/// directions with a relative regulator, or cap-smeared), and the
/// invariant-mass grid for sweeps.
struct SpectralConfig {
  double m = 1.0;
  double g = 1.0;
  StringDirection e = StringDirection::spatial(0.0, 0.0, 1.0);
  StringDirection ep = StringDirection::spatial(0.0, 0.0, 1.0);
  /// regulator relative to the photon momentum kstar; sweeps ladder it
  double eps = 1e-2;
  const CapSmearing* smear_e = nullptr;
  const CapSmearing* smear_ep = nullptr;
  std::vector<double> svals;
  /// angular resolution bump used by refinement error estimates
  std::size_t level = 0;

  void validate() const;
};

/// rho(s) at one point: the photon x scalar two-body phase-space integral
/// in the total rest frame,
///   g^2 kstar / (16 pi^2 sqrt(s)) int dOmega sum_h
///       conj(u(k,h;e).q) (u(k,h;e').q),   q = P - k,
/// with kstar = (s - m^2)/(2 sqrt(s)). Vanishes identically below the
/// threshold s = m^2. The bra slot is conjugated, so e' = e makes the
/// integrand pointwise nonnegative. Sharp strings must be purely spatial
/// and need eps > 0: the zero set of k.e always meets the sphere, and the
/// quadrature clusters its panels around that set.
cplx kl_density_order2(const SpectralConfig& cfg, double s, Exec exec = Exec::openmp);

struct SpectralDensity {
  std::vector<double> s;
  std::vector<cplx> rho;
  std::vector<double> err;
};

/// Sweep over cfg.svals with the regulator ladder {eps, eps/2, eps/4}
/// extrapolated linearly; err combines the ladder spread with a grid
/// refinement defect.
SpectralDensity kl_density_sweep(const SpectralConfig& cfg, Exec exec = Exec::openmp);

struct CollinearScan {
  std::vector<double> angles;  // between the strings, descending
  std::vector<double> rho;     // regulator-extrapolated densities
  std::vector<double> err;
  std::vector<double> increments;  // d rho / d log(1/theta), adjacent pairs
  std::vector<double> exponents;   // d log rho / d log(1/theta), adjacent pairs
};

/// Densities at fixed s for string pairs closing in on each other, the
/// regulator ladder tied to the angle. The zero circles of k.e and k.e'
/// cross at +-(e x e') with transversal angle theta, and the pinch of the
/// two string poles carries the Jacobian 1/sin(theta), so rho grows like
/// 1/theta: increments against log(1/theta) double per halving while the
/// fitted log-log exponent settles near one. That exponent is the stable
/// signature of the collinear divergence.
CollinearScan collinear_divergence_scan(double m, double g, double s,
                                        const std::vector<double>& angles,
                                        Exec exec = Exec::openmp);

/// Infraparticle weight replacing the mass-shell delta:
///   rho_beta(s) = N (s - m^2)^{beta - 1} exp(-((s - m^2) / (10 m^2))^2)
/// above threshold, N fixed so the total weight is exactly one. The
/// substitution u = (s - m^2)^beta flattens the endpoint, so the same
/// normalization integral is exact for beta all the way down to 0.01.
double infraparticle_toy_density(double m, double beta, double s);

/// int rho_beta(s) w(s) ds, with w supplied as a function of the offset
/// t = s - m^2 above threshold. Small beta piles the weight onto offsets
/// far below the resolution of s itself (at beta = 0.01 most of it sits
/// at t < 1e-16 m^2), so pointwise rho_beta(s) sampling cannot see it;
/// this form never round-trips through s and recovers w(0) as beta -> 0.
double infraparticle_weak_integral(double m, double beta,
                                   const std::function<double(double)>& w);

}  // namespace slqft
