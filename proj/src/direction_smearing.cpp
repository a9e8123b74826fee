#include "slqft/direction_smearing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slqft/gauss.hpp"
#include "slqft/testfunction.hpp"

namespace slqft {

namespace {

struct Azimuthal {
  cplx i0, i1;
};

// Closed forms for int dpsi / (A + B cos psi) and the cos psi moment,
// valid for complex A with Im A != 0.
Azimuthal azimuthal_integrals(cplx A, double B) {
  Azimuthal r;
  if (std::abs(B) <= 1e-12 * std::abs(A)) {
    const cplx q = B / A;
    r.i0 = 2.0 * M_PI / A * (1.0 + 0.5 * q * q);
    r.i1 = -M_PI * B / (A * A) * (1.0 + 0.75 * q * q);
    return r;
  }
  const cplx s = std::sqrt(A * A - B * B);
  const cplx zp = (-A + s) / B;
  const double sign = std::abs(zp) < 1.0 ? 1.0 : -1.0;
  r.i0 = sign * 2.0 * M_PI / s;
  r.i1 = (2.0 * M_PI - A * r.i0) / B;
  return r;
}

std::array<double, 3> normalized(const std::array<double, 3>& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n == 0.0) throw std::invalid_argument("DirectionCap: zero axis");
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

CapSmearing::CapSmearing(const DirectionCap& cap, double rel_eps)
    : cap_(cap), inv_frame_(cap.frame.inverse()), rel_eps_(rel_eps) {
  if (!(cap.half_angle > 0.0 && cap.half_angle < M_PI))
    throw std::invalid_argument("DirectionCap: half_angle out of range");
  if (!(rel_eps > 0.0)) throw std::invalid_argument("CapSmearing: rel_eps must be positive");
  cap_.axis = normalized(cap.axis);

  // plateau_bump converges slowly under Gauss-Legendre; the weight norm
  // must be exact to machine precision or it floors every moment's error
  const GaussRule g = gauss_legendre_on(480, 0.0, cap_.half_angle);
  double total = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i)
    total += g.w[i] * plateau_bump(g.x[i] / cap_.half_angle) * std::sin(g.x[i]);
  norm_ = 1.0 / (2.0 * M_PI * total);

  rotation_only_ = true;
  for (int i = 1; i < 4; ++i)
    if (std::abs(cap_.frame.m[0][i]) > 1e-14 || std::abs(cap_.frame.m[i][0]) > 1e-14)
      rotation_only_ = false;
  if (std::abs(cap_.frame.m[0][0] - 1.0) > 1e-14) rotation_only_ = false;
}

CFourVector CapSmearing::base_moment_unit(const std::array<double, 3>& phat) const {
  const auto& o = cap_.axis;
  const double a = phat[0] * o[0] + phat[1] * o[1] + phat[2] * o[2];
  std::array<double, 3> ub{phat[0] - a * o[0], phat[1] - a * o[1], phat[2] - a * o[2]};
  double b = std::sqrt(ub[0] * ub[0] + ub[1] * ub[1] + ub[2] * ub[2]);
  if (b < 1e-14) {
    ub = {0.0, 0.0, 0.0};
    b = 0.0;
  } else {
    for (double& v : ub) v /= b;
  }

  // Polar integration split at grazing incidence, where A^2 - B^2 has a
  // simple zero and the integrand gains a 1/sqrt factor.
  const double alpha = std::atan2(b, a);
  const double tmax = cap_.half_angle;
  std::vector<double> cuts{0.0};
  for (double c : {std::abs(M_PI / 2.0 - alpha), M_PI / 2.0 + std::min(alpha, M_PI - alpha)})
    if (c > 1e-12 && c < tmax - 1e-12) cuts.push_back(c);
  cuts.push_back(tmax);
  std::sort(cuts.begin(), cuts.end());

  auto is_cut = [&](double t) {
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i)
      if (std::abs(t - cuts[i]) < 1e-12) return true;
    return false;
  };

  cplx acc_o{0.0, 0.0}, acc_b{0.0, 0.0};
  auto add_theta = [&](double theta, double wq) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double w = norm_ * plateau_bump(theta / tmax) * st * wq;
    if (w == 0.0) return;
    const cplx A{-a * ct, rel_eps_};
    const Azimuthal az = azimuthal_integrals(A, -b * st);
    acc_o += w * ct * az.i0;
    acc_b += w * st * az.i1;
  };

  // After u^2 = theta - cut the integrand still has a feature of width
  // sqrt(rel_eps) in u, so cut-adjacent pieces are split there.
  auto integrate_sqrt = [&](double cut, double span, double dir) {
    const double utot = std::sqrt(span);
    const double us = std::min(0.5 * utot, std::sqrt(6.0 * rel_eps_));
    for (auto [ua, ub] : {std::pair<double, double>{0.0, us}, {us, utot}}) {
      const GaussRule g = gauss_legendre_on(48, ua, ub);
      for (std::size_t i = 0; i < g.x.size(); ++i)
        add_theta(cut + dir * g.x[i] * g.x[i], 2.0 * g.x[i] * g.w[i]);
    }
  };

  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    double ta = cuts[seg], tb = cuts[seg + 1];
    const bool cut_a = is_cut(ta), cut_b = is_cut(tb);
    std::vector<std::pair<double, double>> halves;
    if (cut_a && cut_b) {
      const double mid = 0.5 * (ta + tb);
      halves = {{ta, mid}, {mid, tb}};
    } else {
      halves = {{ta, tb}};
    }
    for (auto [lo, hi] : halves) {
      if (is_cut(lo)) {
        integrate_sqrt(lo, hi - lo, 1.0);
      } else if (is_cut(hi)) {
        integrate_sqrt(hi, hi - lo, -1.0);
      } else {
        const GaussRule gp = gauss_legendre_on(48, lo, hi);
        for (std::size_t i = 0; i < gp.x.size(); ++i) add_theta(gp.x[i], gp.w[i]);
      }
    }
  }

  CFourVector v;
  for (int i = 0; i < 3; ++i) v[i + 1] = acc_o * o[i] + acc_b * ub[i];
  return v;
}

CFourVector CapSmearing::moment(const FourVector& p) const {
  const FourVector q = inv_frame_(p);
  const double r = q.spatial_norm();
  if (r < 1e-300) throw std::invalid_argument("CapSmearing: zero spatial momentum");
  const CFourVector base = base_moment_unit({q[1] / r, q[2] / r, q[3] / r});
  return cap_.frame(base * cplx(1.0 / r));
}

std::vector<CFourVector> CapSmearing::angular_table(
    const std::vector<std::array<double, 3>>& lab_dirs) const {
  if (!rotation_only_)
    throw std::logic_error("CapSmearing: angular table requires a rotation-only frame");
  std::vector<CFourVector> out;
  out.reserve(lab_dirs.size());
  for (const auto& d : lab_dirs) {
    const FourVector lab{0.0, d[0], d[1], d[2]};
    const FourVector q = inv_frame_(lab);
    out.push_back(cap_.frame(base_moment_unit({q[1], q[2], q[3]})));
  }
  return out;
}

CFourVector cap_moment_brute(const DirectionCap& cap, const FourVector& p, double rel_eps,
                             std::size_t n_theta, std::size_t n_phi) {
  const auto axis = normalized(cap.axis);
  // Orthonormal triad about the axis.
  std::array<double, 3> t1{};
  if (std::abs(axis[0]) < 0.9)
    t1 = {0.0, -axis[2], axis[1]};
  else
    t1 = {-axis[1], axis[0], 0.0};
  {
    const double n = std::sqrt(t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]);
    for (double& v : t1) v /= n;
  }
  const std::array<double, 3> t2{axis[1] * t1[2] - axis[2] * t1[1],
                                 axis[2] * t1[0] - axis[0] * t1[2],
                                 axis[0] * t1[1] - axis[1] * t1[0]};

  const GaussRule gn = gauss_legendre_on(480, 0.0, cap.half_angle);
  double total = 0.0;
  for (std::size_t i = 0; i < gn.x.size(); ++i)
    total += gn.w[i] * plateau_bump(gn.x[i] / cap.half_angle) * std::sin(gn.x[i]);
  const double norm = 1.0 / (2.0 * M_PI * total);

  const Lorentz inv = cap.frame.inverse();
  const FourVector q = inv(p);
  const double r = q.spatial_norm();

  const GaussRule gt = gauss_legendre_on(n_theta, 0.0, cap.half_angle);
  CFourVector acc;
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double th = gt.x[i], st = std::sin(th), ct = std::cos(th);
    const double w = norm * plateau_bump(th / cap.half_angle) * st * gt.w[i];
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double ph = (j + 0.5) * 2.0 * M_PI / n_phi;
      FourVector e{0.0, 0.0, 0.0, 0.0};
      for (int k = 0; k < 3; ++k)
        e[k + 1] = ct * axis[k] + st * (std::cos(ph) * t1[k] + std::sin(ph) * t2[k]);
      const cplx den = cplx(mdot(q, e), rel_eps * r);
      const double wj = w * 2.0 * M_PI / n_phi;
      for (int k = 0; k < 4; ++k) acc[k] += wj * e[k] / den;
    }
  }
  return cap.frame(acc);
}

}  // namespace slqft
