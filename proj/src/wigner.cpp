#include "slqft/wigner.hpp"

#include <cmath>
#include <stdexcept>

namespace slqft {

CFourVector helicity_vector(const FourVector& p, int h) {
  if (h != 1 && h != -1) throw std::invalid_argument("helicity_vector: h must be +1 or -1");
  const double r = p.spatial_norm();
  if (r == 0.0) throw std::invalid_argument("helicity_vector: zero spatial momentum");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const CFourVector ez{cplx(0.0), cplx(inv_sqrt2), cplx(0.0, -h * inv_sqrt2), cplx(0.0)};
  const Lorentz rot = Lorentz::rotation_z_to(p[1] / r, p[2] / r, p[3] / r);
  return rot(ez);
}

FourVector reference_null(const FourVector& p) { return {p[0], -p[1], -p[2], -p[3]}; }

std::array<std::array<cplx, 4>, 4> helicity_completeness(const FourVector& p) {
  std::array<std::array<cplx, 4>, 4> out{};
  for (int h : {1, -1}) {
    const CFourVector e = helicity_vector(p, h);
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) out[mu][nu] += e[mu] * std::conj(e[nu]);
  }
  return out;
}

std::array<CFourVector, 3> proca_frame(const FourVector& p, double mass) {
  if (!(mass > 0.0)) throw std::invalid_argument("proca_frame: mass must be positive");
  std::array<CFourVector, 3> eps;
  for (int lam = 0; lam < 3; ++lam) {
    FourVector ehat{0.0, 0.0, 0.0, 0.0};
    ehat[lam + 1] = 1.0;
    const double pe = p[1] * ehat[1] + p[2] * ehat[2] + p[3] * ehat[3];
    CFourVector v;
    v[0] = pe / mass;
    for (int i = 1; i < 4; ++i) v[i] = ehat[i] + p[i] * pe / (mass * (p[0] + mass));
    eps[lam] = v;
  }
  return eps;
}

}  // namespace slqft
