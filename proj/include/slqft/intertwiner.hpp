#pragma once

#include <array>

#include "slqft/fourvector.hpp"

namespace slqft {

/// Dense complex rank-2 tensor with both indices up, K^{mu nu}.
struct CMatrix4 {
  std::array<std::array<cplx, 4>, 4> m{};

  cplx& operator()(int mu, int nu) { return m[mu][nu]; }
  cplx operator()(int mu, int nu) const { return m[mu][nu]; }

  CMatrix4 operator+(const CMatrix4& o) const;
  CMatrix4 operator-(const CMatrix4& o) const;
  CMatrix4 operator*(cplx s) const;
  double frobenius() const;
  CMatrix4 adjoint() const;
};

/// conj(a)^mu b^nu accumulated outer product.
CMatrix4 outer_conj(const CFourVector& a, const CFourVector& b);

/// conj(f)_mu K^{mu nu} g_nu with indices lowered by the metric.
cplx contract(const CFourVector& f, const CMatrix4& K, const CFourVector& g);

/// String-localized potential intertwiner, helicity h = +1/-1:
///   u^mu(p, h; e) = e_h^mu(p) - p^mu (e_h(p).e) / (p.e + i eps).
/// eps = 0 is allowed away from the denominator zero set; too close to it
/// raises singular_string_error.
CFourVector string_intertwiner(const FourVector& p, int h, const StringDirection& e,
                               double eps);

/// Pure gradient part p^mu (e_h.e)/(p.e + i eps); u = e_h - this.
CFourVector string_gradient_part(const FourVector& p, int h, const StringDirection& e,
                                 double eps);

/// Massive vector analogue with the Proca frame in place of helicity
/// vectors, lambda = 0,1,2.
CFourVector string_intertwiner_massive(const FourVector& p, double mass, int lambda,
                                       const StringDirection& e, double eps);

/// Field strength intertwiner F^{mu nu} = -i (p^mu u^nu - p^nu u^mu),
/// evaluated through u(p,h;e); the e-dependence cancels identically.
CMatrix4 field_strength_intertwiner(const FourVector& p, int h, const StringDirection& e,
                                    double eps);

/// String-change function: u(p,h;e) - u(p,h;e') = i p^mu phi. Closed form
///   phi = i [ (e_h.e)/(p.e) - (e_h.e')/(p.e') ]
/// regularized with +i eps in both denominators.
cplx string_change(const FourVector& p, int h, const StringDirection& e,
                   const StringDirection& ep, double eps);

/// Two-point kernel of the string potential, closed form:
///   W^{mu nu}(p; e, e') = -g^{mu nu}
///                         - p^mu p^nu (e.e') / ((p.e - i eps)(p.e' + i eps))
///                         + p^mu e^nu / (p.e - i eps)
///                         + p^nu e'^mu / (p.e' + i eps).
/// The e slot carries the conjugated field. Massless and massive coincide
/// pointwise on their shells; mass enters only through the shell measure.
CMatrix4 two_point_kernel(const FourVector& p, const StringDirection& e,
                          const StringDirection& ep, double eps);

/// Same kernel from the rank-2 helicity sum Sum_h conj(u(e))^mu u(e')^nu.
/// Agrees with two_point_kernel exactly at eps = 0.
CMatrix4 two_point_kernel_rank2(const FourVector& p, const StringDirection& e,
                                const StringDirection& ep, double eps);

/// Massive rank-2 sum over the Proca frame.
CMatrix4 two_point_kernel_rank2_massive(const FourVector& p, double mass,
                                        const StringDirection& e,
                                        const StringDirection& ep, double eps);

/// Pointlike Proca two-point kernel -g^{mu nu} + p^mu p^nu / m^2.
CMatrix4 proca_completeness_kernel(const FourVector& p, double mass);

/// Contracted field-strength two-point kernel
/// g_{mu alpha} Sum_h conj(F(e))^{mu nu} F(e')^{alpha beta} -> index (nu, beta).
CMatrix4 field_strength_kernel(const FourVector& p, const StringDirection& e,
                               const StringDirection& ep, double eps);

}  // namespace slqft
