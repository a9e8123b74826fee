#include "slqft/intertwiner.hpp"

#include <cmath>

#include "slqft/wigner.hpp"

namespace slqft {

namespace {

// p.e + i eps, guarding the eps = 0 singular set.
cplx string_denominator(const FourVector& p, const StringDirection& e, double eps) {
  const double pe = mdot(p, e.e);
  if (eps == 0.0 && std::abs(pe) < 1e-10 * std::abs(p[0]))
    throw singular_string_error("string denominator vanishes at eps = 0");
  return cplx(pe, eps);
}

}  // namespace

CMatrix4 CMatrix4::operator+(const CMatrix4& o) const {
  CMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
  return r;
}

CMatrix4 CMatrix4::operator-(const CMatrix4& o) const {
  CMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
  return r;
}

CMatrix4 CMatrix4::operator*(cplx s) const {
  CMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = s * m[i][j];
  return r;
}

double CMatrix4::frobenius() const {
  double s = 0.0;
  for (const auto& row : m)
    for (const cplx& z : row) s += std::norm(z);
  return std::sqrt(s);
}

CMatrix4 CMatrix4::adjoint() const {
  CMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = std::conj(m[j][i]);
  return r;
}

CMatrix4 outer_conj(const CFourVector& a, const CFourVector& b) {
  CMatrix4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.m[i][j] = std::conj(a[i]) * b[j];
  return r;
}

cplx contract(const CFourVector& f, const CMatrix4& K, const CFourVector& g) {
  cplx s{0.0, 0.0};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      s += std::conj(f[mu]) * metric_diag(mu) * K(mu, nu) * metric_diag(nu) * g[nu];
  return s;
}

CFourVector string_intertwiner(const FourVector& p, int h, const StringDirection& e,
                               double eps) {
  const CFourVector eh = helicity_vector(p, h);
  const cplx coef = mdot(eh, e.e) / string_denominator(p, e, eps);
  return eh - CFourVector(p) * coef;
}

CFourVector string_gradient_part(const FourVector& p, int h, const StringDirection& e,
                                 double eps) {
  const CFourVector eh = helicity_vector(p, h);
  return CFourVector(p) * (mdot(eh, e.e) / string_denominator(p, e, eps));
}

CFourVector string_intertwiner_massive(const FourVector& p, double mass, int lambda,
                                       const StringDirection& e, double eps) {
  const CFourVector eps_l = proca_frame(p, mass)[lambda];
  const cplx coef = mdot(eps_l, e.e) / string_denominator(p, e, eps);
  return eps_l - CFourVector(p) * coef;
}

CMatrix4 field_strength_intertwiner(const FourVector& p, int h, const StringDirection& e,
                                    double eps) {
  const CFourVector u = string_intertwiner(p, h, e, eps);
  CMatrix4 F;
  const cplx mi{0.0, -1.0};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) F(mu, nu) = mi * (p[mu] * u[nu] - p[nu] * u[mu]);
  return F;
}

cplx string_change(const FourVector& p, int h, const StringDirection& e,
                   const StringDirection& ep, double eps) {
  const CFourVector eh = helicity_vector(p, h);
  const cplx a = mdot(eh, e.e) / string_denominator(p, e, eps);
  const cplx b = mdot(eh, ep.e) / string_denominator(p, ep, eps);
  return cplx(0.0, 1.0) * (a - b);
}

CMatrix4 two_point_kernel(const FourVector& p, const StringDirection& e,
                          const StringDirection& ep, double eps) {
  const cplx de = std::conj(string_denominator(p, e, eps));
  const cplx dep = string_denominator(p, ep, eps);
  const double eep = mdot(e.e, ep.e);
  CMatrix4 K;
  for (int mu = 0; mu < 4; ++mu) {
    K(mu, mu) = -metric_diag(mu);
    for (int nu = 0; nu < 4; ++nu) {
      K(mu, nu) += -p[mu] * p[nu] * eep / (de * dep) + p[mu] * e.e[nu] / de +
                   p[nu] * ep.e[mu] / dep;
    }
  }
  return K;
}

CMatrix4 two_point_kernel_rank2(const FourVector& p, const StringDirection& e,
                                const StringDirection& ep, double eps) {
  CMatrix4 K;
  for (int h : {1, -1})
    K = K + outer_conj(string_intertwiner(p, h, e, eps),
                       string_intertwiner(p, h, ep, eps));
  return K;
}

CMatrix4 two_point_kernel_rank2_massive(const FourVector& p, double mass,
                                        const StringDirection& e,
                                        const StringDirection& ep, double eps) {
  CMatrix4 K;
  for (int lam = 0; lam < 3; ++lam)
    K = K + outer_conj(string_intertwiner_massive(p, mass, lam, e, eps),
                       string_intertwiner_massive(p, mass, lam, ep, eps));
  return K;
}

CMatrix4 proca_completeness_kernel(const FourVector& p, double mass) {
  CMatrix4 K;
  for (int mu = 0; mu < 4; ++mu) {
    K(mu, mu) = -metric_diag(mu);
    for (int nu = 0; nu < 4; ++nu) K(mu, nu) += p[mu] * p[nu] / (mass * mass);
  }
  return K;
}

CMatrix4 field_strength_kernel(const FourVector& p, const StringDirection& e,
                               const StringDirection& ep, double eps) {
  CMatrix4 M;
  for (int h : {1, -1}) {
    const CMatrix4 F1 = field_strength_intertwiner(p, h, e, eps);
    const CMatrix4 F2 = field_strength_intertwiner(p, h, ep, eps);
    for (int nu = 0; nu < 4; ++nu)
      for (int be = 0; be < 4; ++be) {
        cplx s{0.0, 0.0};
        for (int mu = 0; mu < 4; ++mu)
          s += std::conj(F1(mu, nu)) * metric_diag(mu) * F2(mu, be);
        M(nu, be) += s;
      }
  }
  return M;
}

}  // namespace slqft
