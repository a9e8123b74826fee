#pragma once

#include <array>
#include <complex>
#include <vector>

#include "slqft/fourvector.hpp"

namespace slqft {

/// Smooth transition: 0 for t <= 0, 1 for t >= 1, C-infinity.
double smoothstep(double t);

/// Plateau bump: 1 on |u| <= 0.55, 0 on |u| >= 1, C-infinity.
double plateau_bump(double u);

struct FourierResult {
  cplx value{0.0, 0.0};
  double err = 0.0;
  bool converged = true;
};

/// Transform value in scaled form: the quantity is value * exp(logmag).
/// Keeps deep-strip continuations representable where the factors of a
/// product overflow individually but the product does not.
struct ScaledFourier {
  cplx value{0.0, 0.0};
  double logmag = 0.0;
};

/// One real even profile per axis. Bump width is the support half-width;
/// gaussian width is sigma (treated as zero beyond 12 sigma).
struct Profile1D {
  enum class Kind { bump, gaussian };
  Kind kind = Kind::bump;
  double width = 1.0;

  double value(double u) const;
  double support() const { return kind == Kind::bump ? width : 12.0 * width; }

  /// ghat(k) = int g(u) e^{iku} du by adaptive Gauss-Legendre. Valid for
  /// complex k (entire by compact support). fast skips the second
  /// quadrature level used for the error estimate.
  FourierResult transform(cplx k, bool fast = false) const;

  /// ghat(k) with the growth exp(|Im k| L) factored out; |value| stays O(1)
  /// for any k on the strip.
  ScaledFourier transform_scaled(cplx k) const;
};

/// Tabulated profile transform on the real axis. The profiles are real and
/// even, so ghat is real and even; only k >= 0 is stored. Evaluation is a
/// 6-point Lagrange stencil on a uniform grid, accurate to ~1e-11 relative
/// to the peak, which makes shell-sized sweeps affordable.
class RealFourierTable {
 public:
  RealFourierTable() = default;
  RealFourierTable(const Profile1D& g, double kmax);

  double value(double k) const;
  double err() const { return err_; }
  bool ready() const { return !vals_.empty(); }
  double kmax() const { return kmax_; }

 private:
  double kmax_ = 0.0;
  double h_ = 0.0;
  std::vector<double> vals_;
  double err_ = 0.0;
};

/// Scalar spacetime test function f(x) = amp * prod_i g_i((L^{-1}(x-a))_i).
struct TestFunction {
  std::array<Profile1D, 4> axes{};
  FourVector center{};
  Lorentz frame = Lorentz::identity();
  cplx amplitude{1.0, 0.0};

  /// fhat(p) = int f(x) e^{i p.x} d^4x = amp e^{i p.a} prod ghat_i(k_i),
  /// k_0 = q^0, k_i = -q^i with q = L^{-1} p.
  FourierResult fourier(const CFourVector& p, bool fast = false) const;
  FourierResult fourier(const FourVector& p, bool fast = false) const {
    return fourier(CFourVector(p), fast);
  }

  /// fhat(p) in scaled form, safe for momenta deep in the complex domain.
  ScaledFourier fourier_scaled(const CFourVector& p) const;

  /// fhat(-p) from fhat(p), using that the profiles are real and even and
  /// center/frame are real: fhat(-p) = (amp/conj(amp)) conj(fhat(p)).
  cplx fourier_neg_of(cplx fhat_p) const {
    return amplitude / std::conj(amplitude) * std::conj(fhat_p);
  }
};

}  // namespace slqft
