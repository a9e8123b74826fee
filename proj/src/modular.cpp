#include "slqft/modular.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "slqft/gauss.hpp"

namespace slqft {

namespace {

double det3(const std::array<std::array<double, 4>, 4>& m, int r0, int r1, int r2,
            int c0, int c1, int c2) {
  return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
         m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
         m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
}

double det4(const Lorentz& l) {
  const auto& m = l.m;
  double d = 0.0;
  for (int c = 0; c < 4; ++c) {
    int cols[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != c) cols[k++] = j;
    const double minor = det3(m, 1, 2, 3, cols[0], cols[1], cols[2]);
    d += ((c % 2 == 0) ? 1.0 : -1.0) * m[0][c] * minor;
  }
  return d;
}

// value * exp(logmag) in two steps so exponents up to ~1400 survive when the
// mantissa compensates; anything beyond that is genuinely unrepresentable
cplx fold(cplx value, double logmag) {
  const double h = std::exp(0.5 * logmag);
  return (value * h) * h;
}

}  // namespace

Wedge Wedge::opposite() {
  Wedge w;
  w.lam = Lorentz::rotation(M_PI, 1.0, 0.0, 0.0);
  return w;
}

Wedge Wedge::transformed(const Lorentz& g, const FourVector& a) const {
  Wedge w;
  w.lam = g * lam;
  w.shift = g(shift) + a;
  w.validate();
  return w;
}

void Wedge::validate() const {
  if (lam.defect() > 1e-12 || std::abs(det4(lam) - 1.0) > 1e-12)
    throw std::invalid_argument("Wedge: transform must be proper orthochronous");
}

ModularGrid ModularGrid::make(double theta_max, std::size_t ntheta, double rho_max,
                              std::size_t nrho, std::size_t nphi) {
  if (ntheta == 0 || nrho == 0 || nphi == 0)
    throw std::invalid_argument("ModularGrid: empty dimension");
  ModularGrid g;
  const GaussRule th = gauss_legendre_on(ntheta, -theta_max, theta_max);
  const GaussRule rr = gauss_legendre_on(nrho, 0.0, rho_max);
  g.theta = th.x;
  g.wtheta = th.w;
  g.rho = rr.x;
  g.wrho.resize(nrho);
  for (std::size_t i = 0; i < nrho; ++i) g.wrho[i] = rr.w[i] * rr.x[i];
  g.nphi = nphi;
  return g;
}

double ModularGrid::weight(std::size_t itheta, std::size_t irho) const {
  return 0.5 * wtheta[itheta] * wrho[irho] * (2.0 * M_PI / static_cast<double>(nphi));
}

ModularWave::ModularWave(const TestFunction& f, double mass, const Wedge& w)
    : f_(f), mass_(mass), w_(w) {
  if (!(mass > 0.0)) throw std::invalid_argument("ModularWave: mass must be positive");
  w_.validate();
}

ModularWave ModularWave::continued(cplx dtheta) const {
  ModularWave r = *this;
  r.shift_ += conj_ ? std::conj(dtheta) : dtheta;
  return r;
}

ModularWave ModularWave::boosted(double t) const { return continued(cplx(2.0 * M_PI * t, 0.0)); }

ModularWave ModularWave::conjugated() const {
  ModularWave r = *this;
  r.conj_ = !conj_;
  r.flip_ = !flip_;
  return r;
}

ModularWave ModularWave::tomita() const { return continued(cplx(0.0, -M_PI)).conjugated(); }

cplx ModularWave::base(cplx theta, double px, double py) const {
  const double mperp = std::sqrt(mass_ * mass_ + px * px + py * py);
  const CFourVector pstd{mperp * std::cosh(theta), cplx(px, 0.0), cplx(py, 0.0),
                         mperp * std::sinh(theta)};
  const CFourVector P = w_.lam(pstd);
  const cplx z = cplx(0.0, -1.0) * mdot(P, CFourVector(w_.shift));
  const ScaledFourier sf = f_.fourier_scaled(P);
  return fold(sf.value * std::exp(cplx(0.0, z.imag())), sf.logmag + z.real());
}

cplx ModularWave::value(cplx theta, double px, double py) const {
  const double s = flip_ ? -1.0 : 1.0;
  if (conj_) return std::conj(base(std::conj(theta) + shift_, s * px, s * py));
  return base(theta + shift_, s * px, s * py);
}

ModularWave::Sweep ModularWave::strip_values(const ModularGrid& grid, double strip,
                                             Exec exec) const {
  const std::size_t nth = grid.theta.size(), nrho = grid.rho.size(), nphi = grid.nphi;
  Sweep out;
  out.v.resize(nth * nrho * nphi);

  // Effective base arguments for psi(theta - i strip) after unwinding the
  // conjugation: conj(theta - i strip) = theta + i strip on the real grid.
  const double sflip = flip_ ? -1.0 : 1.0;
  std::vector<cplx> th_eff(nth);
  for (std::size_t i = 0; i < nth; ++i)
    th_eff[i] = cplx(grid.theta[i], conj_ ? strip : -strip) + shift_;

  std::vector<double> mperp(nrho);
  for (std::size_t i = 0; i < nrho; ++i)
    mperp[i] = std::sqrt(mass_ * mass_ + grid.rho[i] * grid.rho[i]);
  std::vector<double> pxs(nrho * nphi), pys(nrho * nphi);
  for (std::size_t ir = 0; ir < nrho; ++ir)
    for (std::size_t ip = 0; ip < nphi; ++ip) {
      const double phi = (static_cast<double>(ip) + 0.5) * 2.0 * M_PI / nphi;
      pxs[ir * nphi + ip] = sflip * grid.rho[ir] * std::cos(phi);
      pys[ir * nphi + ip] = sflip * grid.rho[ir] * std::sin(phi);
    }

  // Per-axis profile transforms factorize over grid slices when the
  // combined frame map keeps longitudinal (0,3) and transverse (1,2)
  // components separate; memoize per slice in that case.
  const Lorentz M = f_.frame.inverse() * w_.lam;
  enum class Dep { longitudinal, transverse, full };
  std::array<Dep, 4> dep;
  for (int a = 0; a < 4; ++a) {
    const bool lt = std::abs(M.m[a][1]) > 1e-14 || std::abs(M.m[a][2]) > 1e-14;
    const bool lg = std::abs(M.m[a][0]) > 1e-14 || std::abs(M.m[a][3]) > 1e-14;
    dep[a] = (lt && lg) ? Dep::full : (lt ? Dep::transverse : Dep::longitudinal);
  }
  const bool factorized =
      dep[0] != Dep::full && dep[1] != Dep::full && dep[2] != Dep::full && dep[3] != Dep::full;

  // The profiles are even, so the sign conventions of the per-axis
  // arguments are immaterial; only the linear map into each axis matters.
  std::array<std::vector<ScaledFourier>, 4> table;
  if (factorized) {
    for (int a = 0; a < 4; ++a) {
      if (dep[a] == Dep::longitudinal) {
        table[a].resize(nth * nrho);
        for (std::size_t it = 0; it < nth; ++it) {
          const cplx ch = std::cosh(th_eff[it]), sh = std::sinh(th_eff[it]);
          for (std::size_t ir = 0; ir < nrho; ++ir) {
            const cplx k = mperp[ir] * (M.m[a][0] * ch + M.m[a][3] * sh);
            table[a][it * nrho + ir] = f_.axes[a].transform_scaled(k);
          }
        }
      } else {
        table[a].resize(nrho * nphi);
        for (std::size_t j = 0; j < nrho * nphi; ++j) {
          const cplx k(M.m[a][1] * pxs[j] + M.m[a][2] * pys[j], 0.0);
          table[a][j] = f_.axes[a].transform_scaled(k);
        }
      }
    }
  }

  const FourVector xoff = f_.center - w_.shift;
  bool finite = true;
#if defined(SLQFT_HAVE_OPENMP)
#pragma omp parallel for schedule(static) reduction(&& : finite) if (exec == Exec::openmp)
#endif
  for (long long itl = 0; itl < static_cast<long long>(nth); ++itl) {
    const std::size_t it = static_cast<std::size_t>(itl);
    const cplx ch = std::cosh(th_eff[it]), sh = std::sinh(th_eff[it]);
    for (std::size_t ir = 0; ir < nrho; ++ir) {
      for (std::size_t ip = 0; ip < nphi; ++ip) {
        const std::size_t j = ir * nphi + ip;
        const CFourVector pstd{mperp[ir] * ch, cplx(pxs[j], 0.0), cplx(pys[j], 0.0),
                               mperp[ir] * sh};
        const CFourVector P = w_.lam(pstd);
        cplx v;
        if (factorized) {
          const cplx z = cplx(0.0, 1.0) * mdot(P, CFourVector(xoff));
          double lm = z.real();
          v = f_.amplitude * std::exp(cplx(0.0, z.imag()));
          for (int a = 0; a < 4; ++a) {
            const ScaledFourier& t =
                dep[a] == Dep::longitudinal ? table[a][it * nrho + ir] : table[a][j];
            v *= t.value;
            lm += t.logmag;
          }
          v = fold(v, lm);
        } else {
          const cplx z = cplx(0.0, -1.0) * mdot(P, CFourVector(w_.shift));
          const ScaledFourier sf = f_.fourier_scaled(P);
          v = fold(sf.value * std::exp(cplx(0.0, z.imag())), sf.logmag + z.real());
        }
        if (conj_) v = std::conj(v);
        out.v[(it * nrho + ir) * nphi + ip] = v;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) finite = false;
      }
    }
  }
  out.finite = finite;
  return out;
}

double norm2(const ModularWave& psi, const ModularGrid& grid, double strip, Exec exec) {
  const auto sw = psi.strip_values(grid, strip, exec);
  if (!sw.finite) return std::numeric_limits<double>::infinity();
  const std::size_t nrho = grid.rho.size(), nphi = grid.nphi;
  return reduce_sum<double>(exec, sw.v.size(), [&](std::size_t i) {
    const std::size_t it = i / (nrho * nphi), ir = (i / nphi) % nrho;
    return grid.weight(it, ir) * std::norm(sw.v[i]);
  });
}

cplx inner(const ModularWave& a, const ModularWave& b, const ModularGrid& grid, Exec exec) {
  const auto sa = a.strip_values(grid, 0.0, exec);
  const auto sb = b.strip_values(grid, 0.0, exec);
  const std::size_t nrho = grid.rho.size(), nphi = grid.nphi;
  return reduce_sum<cplx>(exec, sa.v.size(), [&](std::size_t i) {
    const std::size_t it = i / (nrho * nphi), ir = (i / nphi) % nrho;
    return grid.weight(it, ir) * std::conj(sa.v[i]) * sb.v[i];
  });
}

KspaceDiagnostics kspace_residual(const TestFunction& f, double mass, const Wedge& w,
                                  const ModularGrid& grid, Exec exec) {
  const ModularWave psi(f, mass, w);
  const auto v = psi.strip_values(grid, 0.0, exec);
  const auto vs = psi.tomita().strip_values(grid, 0.0, exec);

  const std::size_t nrho = grid.rho.size(), nphi = grid.nphi;
  auto wsum = [&](auto&& term) {
    return reduce_sum<double>(exec, v.v.size(), [&](std::size_t i) {
      const std::size_t it = i / (nrho * nphi), ir = (i / nphi) % nrho;
      return grid.weight(it, ir) * term(i);
    });
  };
  const double n0 = wsum([&](std::size_t i) { return std::norm(v.v[i]); });
  const double nd = wsum([&](std::size_t i) { return std::norm(vs.v[i] - v.v[i]); });
  const double nhalf = norm2(psi, grid, M_PI / 2, exec);
  const double npi = norm2(psi, grid, M_PI, exec);

  KspaceDiagnostics d;
  d.diverged = !v.finite || !vs.finite || !std::isfinite(nhalf) || !std::isfinite(npi);
  d.boundary_residual = std::sqrt(nd / n0);
  d.strip_ratio = std::sqrt(nhalf) / std::pow(n0 * npi, 0.25);
  d.combined = std::max(d.boundary_residual, d.strip_ratio - 1.0);
  if (d.diverged) d.combined = std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace slqft
