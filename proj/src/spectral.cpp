#include "slqft/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slqft/gauss.hpp"
#include "slqft/intertwiner.hpp"
#include "slqft/wigner.hpp"

namespace slqft {

namespace {

using V3 = std::array<double, 3>;

double dot3(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
V3 cross3(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

V3 unit3(const V3& a) {
  const double n = std::sqrt(dot3(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}

V3 spatial_unit(const StringDirection& e) {
  return unit3({e.e[1], e.e[2], e.e[3]});
}

struct SphereNode {
  V3 n;
  double w;
};

// breakpoints geometrically refined around each anchor down to delta
void cluster(std::vector<double>& pts, double anchor, double delta, double reach) {
  for (double d = delta; d <= reach; d *= 2.0) {
    pts.push_back(anchor - d);
    pts.push_back(anchor + d);
  }
}

std::vector<double> panelize(std::vector<double> pts, double lo, double hi) {
  for (double& p : pts) {
    while (p < lo) p += hi - lo;
    while (p > hi) p -= hi - lo;
  }
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (const double p : pts)
    if (out.empty() || p - out.back() > 1e-9) out.push_back(p);
  return out;
}

// nodes clustered around the zero circles of k.e and k.e', which pass
// through the poles +-(ehat x ephat) and cut the equator at fixed phi;
// smooth integrands (both slots smeared) get uniform panels instead
std::vector<SphereNode> sphere_grid(const V3& eh, const V3& eph, double eps, std::size_t level,
                                    bool smooth) {
  const double delta = std::max(eps / 4.0, 1e-7);
  V3 a = cross3(eh, eph);
  if (dot3(a, a) < 1e-20) {
    const V3 h = std::abs(eh[0]) < 0.8 ? V3{1.0, 0.0, 0.0} : V3{0.0, 1.0, 0.0};
    a = cross3(eh, h);
  }
  a = unit3(a);
  V3 b{eh[0] + eph[0], eh[1] + eph[1], eh[2] + eph[2]};
  b = dot3(b, b) < 1e-20 ? eh : unit3(b);
  const V3 c = cross3(a, b);

  std::vector<double> aph;
  if (smooth) {
    for (std::size_t j = 0; j <= 10 + 2 * level; ++j)
      aph.push_back(M_PI * static_cast<double>(j) / (10.0 + 2.0 * level));
  } else {
    for (std::size_t j = 0; j <= 6 + 2 * level; ++j)
      aph.push_back(M_PI / 4.0 + M_PI / 2.0 * static_cast<double>(j) / (6.0 + 2.0 * level));
    cluster(aph, 0.0, delta, M_PI / 4.0);
    cluster(aph, M_PI, delta, M_PI / 4.0);
  }
  const std::vector<double> apanels = panelize(std::move(aph), 0.0, M_PI);

  std::vector<double> pph;
  const std::size_t nb = (smooth ? 20 : 16) + 8 * level;
  for (std::size_t j = 0; j < nb; ++j)
    pph.push_back(2.0 * M_PI * static_cast<double>(j) / static_cast<double>(nb));
  if (!smooth) {
    for (const V3& dir : {eh, eph}) {
      const double phi0 = std::atan2(dot3(c, dir), dot3(b, dir));
      for (const double s : {phi0 + M_PI / 2.0, phi0 - M_PI / 2.0}) {
        cluster(pph, s, delta, M_PI / 4.0);
        pph.push_back(s);
      }
    }
  }
  const std::vector<double> ppanels = panelize(std::move(pph), 0.0, 2.0 * M_PI);

  const std::size_t oa = 8 + 2 * level, op = 10 + 2 * level;
  std::vector<SphereNode> nodes;
  for (std::size_t i = 0; i + 1 < apanels.size(); ++i) {
    const GaussRule ga = gauss_legendre_on(oa, apanels[i], apanels[i + 1]);
    for (std::size_t j = 0; j + 1 < ppanels.size(); ++j) {
      const GaussRule gp = gauss_legendre_on(op, ppanels[j], ppanels[j + 1]);
      for (std::size_t ia = 0; ia < oa; ++ia)
        for (std::size_t ip = 0; ip < op; ++ip) {
          const double al = ga.x[ia], ph = gp.x[ip];
          const double sa = std::sin(al), ca = std::cos(al);
          const double cp = std::cos(ph), sp = std::sin(ph);
          SphereNode nd;
          for (int d = 0; d < 3; ++d) nd.n[d] = ca * a[d] + sa * (cp * b[d] + sp * c[d]);
          nd.w = ga.w[ia] * gp.w[ip] * sa;
          nodes.push_back(nd);
        }
    }
  }
  return nodes;
}

cplx contraction(const SpectralConfig& cfg, const FourVector& k, const FourVector& q,
                 double eps_abs, int h, bool ket) {
  const StringDirection& dir = ket ? cfg.ep : cfg.e;
  const CapSmearing* smear = ket ? cfg.smear_ep : cfg.smear_e;
  CFourVector u;
  if (smear != nullptr) {
    const CFourVector eh = helicity_vector(k, h);
    const cplx coef = mdot(eh, smear->moment(k));
    u = eh - CFourVector(k) * coef;
  } else {
    u = string_intertwiner(k, h, dir, eps_abs);
  }
  return mdot(u, CFourVector(q));
}

}  // namespace

void SpectralConfig::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("matter mass must be positive");
  if (!std::isfinite(g)) throw std::invalid_argument("coupling must be finite");
  for (const StringDirection* d : {&e, &ep})
    if (d->e[0] != 0.0)
      throw std::invalid_argument("rest-frame density needs purely spatial strings");
  if (smear_e == nullptr || smear_ep == nullptr) {
    if (eps == 0.0)
      throw singular_string_error("sharp string needs eps > 0: k.e vanishes on the sphere");
    if (!(eps > 0.0)) throw std::invalid_argument("regulator must be positive");
  }
  for (std::size_t i = 1; i < svals.size(); ++i)
    if (!(svals[i] > svals[i - 1]))
      throw std::invalid_argument("s grid must be strictly increasing");
}

cplx kl_density_order2(const SpectralConfig& cfg, double s, Exec exec) {
  cfg.validate();
  const double m2 = cfg.m * cfg.m;
  if (s <= m2) return {0.0, 0.0};
  const double rs = std::sqrt(s);
  const double kstar = (s - m2) / (2.0 * rs);
  const double eps_abs = cfg.eps * kstar;

  const bool smooth = cfg.smear_e != nullptr && cfg.smear_ep != nullptr;
  const std::vector<SphereNode> nodes =
      sphere_grid(spatial_unit(cfg.e), spatial_unit(cfg.ep), cfg.eps, cfg.level, smooth);

  const cplx total = reduce_sum<cplx>(exec, nodes.size(), [&](std::size_t i) {
    const SphereNode& nd = nodes[i];
    const FourVector k{kstar, kstar * nd.n[0], kstar * nd.n[1], kstar * nd.n[2]};
    const FourVector q{rs - kstar, -k[1], -k[2], -k[3]};
    cplx acc{0.0, 0.0};
    for (const int h : {1, -1})
      acc += std::conj(contraction(cfg, k, q, eps_abs, h, false)) *
             contraction(cfg, k, q, eps_abs, h, true);
    return acc * nd.w;
  });
  return cfg.g * cfg.g * kstar / (16.0 * M_PI * M_PI * rs) * total;
}

SpectralDensity kl_density_sweep(const SpectralConfig& cfg, Exec exec) {
  cfg.validate();
  SpectralDensity out;
  out.s = cfg.svals;
  out.rho.resize(cfg.svals.size());
  out.err.resize(cfg.svals.size());
  for (std::size_t i = 0; i < cfg.svals.size(); ++i) {
    const double s = cfg.svals[i];
    if (s <= cfg.m * cfg.m) {
      out.rho[i] = 0.0;
      out.err[i] = 0.0;
      continue;
    }
    SpectralConfig c = cfg;
    const cplx r1 = kl_density_order2(c, s, exec);
    c.eps = cfg.eps / 2.0;
    const cplx r2 = kl_density_order2(c, s, exec);
    c.eps = cfg.eps / 4.0;
    const cplx r3 = kl_density_order2(c, s, exec);
    c.level = cfg.level + 1;
    const cplx r3f = kl_density_order2(c, s, exec);
    const cplx e1 = 2.0 * r2 - r1, e2 = 2.0 * r3 - r2;
    out.rho[i] = e2;
    out.err[i] = std::abs(e2 - e1) + 2.0 * std::abs(r3f - r3);
  }
  return out;
}

CollinearScan collinear_divergence_scan(double m, double g, double s,
                                        const std::vector<double>& angles, Exec exec) {
  if (angles.size() < 2) throw std::invalid_argument("need at least two angles");
  for (std::size_t i = 1; i < angles.size(); ++i)
    if (!(angles[i] < angles[i - 1] && angles[i] > 0.0))
      throw std::invalid_argument("angles must be positive and descending");

  CollinearScan out;
  out.angles = angles;
  for (const double th : angles) {
    SpectralConfig cfg;
    cfg.m = m;
    cfg.g = g;
    cfg.e = StringDirection::spatial(std::sin(th / 2.0), 0.0, std::cos(th / 2.0));
    cfg.ep = StringDirection::spatial(-std::sin(th / 2.0), 0.0, std::cos(th / 2.0));
    cfg.eps = 0.2 * th;
    const cplx r1 = kl_density_order2(cfg, s, exec);
    cfg.eps = 0.1 * th;
    const cplx r2 = kl_density_order2(cfg, s, exec);
    cfg.eps = 0.05 * th;
    const cplx r3 = kl_density_order2(cfg, s, exec);
    cfg.level = 1;
    const cplx r3f = kl_density_order2(cfg, s, exec);
    const cplx e1 = 2.0 * r2 - r1, e2 = 2.0 * r3 - r2;
    out.rho.push_back(e2.real());
    out.err.push_back(std::abs(e2 - e1) + 2.0 * std::abs(r3f - r3));
  }

  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double dx = std::log(angles[i - 1] / angles[i]);
    out.increments.push_back((out.rho[i] - out.rho[i - 1]) / dx);
    out.exponents.push_back(std::log(out.rho[i] / out.rho[i - 1]) / dx);
  }
  return out;
}

namespace {

// int_0^umax f(u^{1/beta}) du, the flattened form of
// beta int_0^tmax t^{beta-1} f(t) dt under u = t^beta
double flattened_integral(double beta, double scale,
                          const std::function<double(double)>& f) {
  const double umax = std::pow(6.0 * scale, beta);
  const std::size_t panels = 64;
  double acc = 0.0;
  for (std::size_t j = 0; j < panels; ++j) {
    const GaussRule gl = gauss_legendre_on(
        12, umax * static_cast<double>(j) / panels, umax * static_cast<double>(j + 1) / panels);
    for (std::size_t i = 0; i < 12; ++i) acc += gl.w[i] * f(std::pow(gl.x[i], 1.0 / beta));
  }
  return acc;
}

void check_infraparticle_args(double m, double beta) {
  if (!(m > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
}

}  // namespace

double infraparticle_toy_density(double m, double beta, double s) {
  check_infraparticle_args(m, beta);
  const double m2 = m * m;
  if (s <= m2) return 0.0;
  const double scale = 10.0 * m2;
  const auto tail = [scale](double t) {
    const double x = t / scale;
    return std::exp(-x * x);
  };
  const double total = flattened_integral(beta, scale, tail) / beta;
  const double t = s - m2;
  return std::pow(t, beta - 1.0) * tail(t) / total;
}

double infraparticle_weak_integral(double m, double beta,
                                   const std::function<double(double)>& w) {
  check_infraparticle_args(m, beta);
  const double scale = 10.0 * m * m;
  const auto tail = [scale](double t) {
    const double x = t / scale;
    return std::exp(-x * x);
  };
  // N and 1/beta cancel in the ratio; t never round-trips through s
  const double num = flattened_integral(
      beta, scale, [&](double t) { return tail(t) * w(t); });
  return num / flattened_integral(beta, scale, tail);
}

}  // namespace slqft
