#include "slqft/testfunction.hpp"

#include <algorithm>
#include <cmath>

#include "slqft/gauss.hpp"

namespace slqft {

namespace {

double expm_inv(double t) { return t <= 0.0 ? 0.0 : std::exp(-1.0 / t); }

// scale > 0 divides the integrand by exp(scale) so deep-strip evaluations
// stay representable; the caller reattaches the factor symbolically
FourierResult transform_at_order(const Profile1D& g, cplx k, std::size_t n,
                                 double scale = 0.0) {
  const double L = g.support();
  const GaussRule r = gauss_legendre_on(n, -L, L);
  cplx v{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    v += r.w[i] * g.value(r.x[i]) * std::exp(cplx(0.0, 1.0) * k * r.x[i] - scale);
  FourierResult out;
  out.value = v;
  return out;
}

std::size_t transform_order(const Profile1D& g, cplx k) {
  // bump profiles converge slowly (Gevrey regularity), gaussians fast
  const std::size_t floor_n = g.kind == Profile1D::Kind::bump ? 288 : 48;
  return std::min<std::size_t>(
      1024,
      floor_n + static_cast<std::size_t>(std::ceil(2.2 * std::abs(k) * g.support())));
}

}  // namespace

double smoothstep(double t) {
  const double a = expm_inv(t);
  const double b = expm_inv(1.0 - t);
  return a / (a + b);
}

double plateau_bump(double u) {
  return smoothstep((1.0 - std::abs(u)) / 0.45);
}

double Profile1D::value(double u) const {
  if (kind == Kind::bump) return plateau_bump(u / width);
  const double s = u / width;
  return std::abs(s) > 12.0 ? 0.0 : std::exp(-0.5 * s * s);
}

FourierResult Profile1D::transform(cplx k, bool fast) const {
  const double L = support();
  const std::size_t n1 = transform_order(*this, k);
  if (fast) return transform_at_order(*this, k, n1 + 12);
  FourierResult a = transform_at_order(*this, k, n1);
  FourierResult b = transform_at_order(*this, k, n1 + 24);
  b.err = std::abs(a.value - b.value);
  b.converged = b.err <= 1e-11 * std::max(std::abs(b.value), 0.05 * L);
  return b;
}

ScaledFourier Profile1D::transform_scaled(cplx k) const {
  const double s = std::abs(k.imag()) * support();
  const FourierResult r = transform_at_order(*this, k, transform_order(*this, k) + 12, s);
  return {r.value, s};
}

RealFourierTable::RealFourierTable(const Profile1D& g, double kmax) {
  const double L = g.support();
  kmax_ = std::max(kmax, 1.0 / L) * 1.02;
  // 6-point Lagrange on spacing h: error ~ (hL)^6 relative to the peak
  h_ = 0.05 / L;
  const std::size_t n = static_cast<std::size_t>(std::ceil(kmax_ / h_)) + 7;
  vals_.resize(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const FourierResult r = g.transform(cplx(h_ * static_cast<double>(i)));
    vals_[i] = r.value.real();
    err_ = std::max(err_, r.err + std::abs(r.value.imag()));
    peak = std::max(peak, std::abs(vals_[i]));
  }
  err_ += 1e-11 * peak;  // interpolation contribution
}

double RealFourierTable::value(double k) const {
  const double a = std::abs(k);
  const double t = a / h_;
  const auto n = static_cast<std::ptrdiff_t>(vals_.size());
  std::ptrdiff_t i0 = static_cast<std::ptrdiff_t>(t) - 2;
  i0 = std::max<std::ptrdiff_t>(0, std::min(i0, n - 6));
  const double s = t - static_cast<double>(i0);
  // 6-point Lagrange weights, denominators (-1)^j j!(5-j)!
  static constexpr double den[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
  double out = 0.0;
  for (int j = 0; j < 6; ++j) {
    double w = 1.0 / den[j];
    for (int l = 0; l < 6; ++l)
      if (l != j) w *= s - static_cast<double>(l);
    out += w * vals_[static_cast<std::size_t>(i0) + static_cast<std::size_t>(j)];
  }
  return out;
}

ScaledFourier TestFunction::fourier_scaled(const CFourVector& p) const {
  const Lorentz inv = frame.inverse();
  const CFourVector q = inv(p);
  const cplx z = cplx(0.0, 1.0) * (p[0] * center[0] - p[1] * center[1] -
                                   p[2] * center[2] - p[3] * center[3]);
  ScaledFourier out;
  out.value = amplitude * std::exp(cplx(0.0, z.imag()));
  out.logmag = z.real();
  for (int i = 0; i < 4; ++i) {
    const cplx k = (i == 0) ? q[0] : -q[i];
    const ScaledFourier t = axes[i].transform_scaled(k);
    out.value *= t.value;
    out.logmag += t.logmag;
  }
  return out;
}

FourierResult TestFunction::fourier(const CFourVector& p, bool fast) const {
  const Lorentz inv = frame.inverse();
  const CFourVector q = inv(p);
  const cplx phase =
      std::exp(cplx(0.0, 1.0) * (p[0] * center[0] - p[1] * center[1] -
                                 p[2] * center[2] - p[3] * center[3]));
  FourierResult out;
  out.value = amplitude * phase;
  for (int i = 0; i < 4; ++i) {
    const cplx k = (i == 0) ? q[0] : -q[i];
    const FourierResult t = axes[i].transform(k, fast);
    // First-order error propagation through the product.
    out.err = out.err * std::abs(t.value) + std::abs(out.value) * t.err;
    out.value *= t.value;
    out.converged = out.converged && t.converged;
  }
  return out;
}

}  // namespace slqft
