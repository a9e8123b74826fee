#include "slqft/shell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slqft/gauss.hpp"

namespace slqft {

namespace {

void fill_radial(ShellQuadrature& q, const std::vector<double>& row_theta,
                 const std::vector<double>& row_w, std::size_t nphi,
                 const std::array<double, 3>& u, const std::array<double, 3>& v,
                 const std::array<double, 3>& w, std::size_t nr) {
  q.n_ang = row_theta.size() * nphi;
  q.directions.reserve(q.n_ang);
  const double dphi = 2.0 * M_PI / static_cast<double>(nphi);
  std::vector<double> angw;
  angw.reserve(q.n_ang);
  for (std::size_t i = 0; i < row_theta.size(); ++i) {
    const double c = std::cos(row_theta[i]), s = std::sin(row_theta[i]);
    for (std::size_t j = 0; j < nphi; ++j) {
      const double phi = (static_cast<double>(j) + 0.5) * dphi;
      const double a = s * std::cos(phi), b = s * std::sin(phi);
      q.directions.push_back({c * u[0] + a * v[0] + b * w[0],
                              c * u[1] + a * v[1] + b * w[1],
                              c * u[2] + a * v[2] + b * w[2]});
      angw.push_back(row_w[i] * dphi);
    }
  }

  const GaussRule rad = gauss_legendre_on(nr, 0.0, q.pmax);
  q.nodes.reserve(nr * q.n_ang);
  for (std::size_t ir = 0; ir < nr; ++ir) {
    const double r = rad.x[ir];
    const double omega = std::sqrt(r * r + q.mass * q.mass);
    const double wr = rad.w[ir] * r * r / (2.0 * omega);
    for (std::size_t a = 0; a < q.n_ang; ++a) {
      const auto& d = q.directions[a];
      q.nodes.push_back({FourVector{omega, r * d[0], r * d[1], r * d[2]}, wr * angw[a], a});
    }
  }
}

std::size_t up(std::size_t n) { return n + (n * 2) / 5; }

}  // namespace

ShellQuadrature ShellQuadrature::make(double mass, double pmax, std::size_t nr,
                                      std::size_t ntheta, std::size_t nphi) {
  if (nphi % 2 != 0) throw std::invalid_argument("ShellQuadrature: nphi must be even");
  ShellQuadrature q;
  q.mass = mass;
  q.pmax = pmax;
  q.spec = ShellSpec{mass, pmax, nr, nphi, ntheta, false, {0.0, 0.0, 1.0}, 0.0, 0, 0};

  // Gauss-Legendre in cos(theta): the GL weight already carries the
  // sin(theta) Jacobian, so it is the full row weight.
  const GaussRule ct = gauss_legendre_on(ntheta, -1.0, 1.0);
  std::vector<double> row_theta(ntheta), row_w(ntheta);
  for (std::size_t i = 0; i < ntheta; ++i) {
    row_theta[i] = std::acos(ct.x[i]);
    row_w[i] = ct.w[i];
  }
  fill_radial(q, row_theta, row_w, nphi, {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0},
              {0.0, 1.0, 0.0}, nr);
  return q;
}

ShellQuadrature ShellQuadrature::make_banded(double mass, double pmax, std::size_t nr,
                                             std::size_t n_out, std::size_t n_band,
                                             std::size_t nphi,
                                             const std::array<double, 3>& axis,
                                             double band_half_angle) {
  if (nphi % 2 != 0) throw std::invalid_argument("ShellQuadrature: nphi must be even");
  const double an = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(an > 0.0)) throw std::invalid_argument("ShellQuadrature: zero band axis");
  const double ha = std::clamp(band_half_angle, 1e-3, M_PI / 2 - 0.05);

  ShellQuadrature q;
  q.mass = mass;
  q.pmax = pmax;
  const std::array<double, 3> u{axis[0] / an, axis[1] / an, axis[2] / an};
  q.spec = ShellSpec{mass, pmax, nr, nphi, 0, true, u, ha, n_out, n_band};

  std::array<double, 3> h = std::abs(u[0]) < 0.8 ? std::array<double, 3>{1.0, 0.0, 0.0}
                                                 : std::array<double, 3>{0.0, 1.0, 0.0};
  const double hu = h[0] * u[0] + h[1] * u[1] + h[2] * u[2];
  std::array<double, 3> v{h[0] - hu * u[0], h[1] - hu * u[1], h[2] - hu * u[2]};
  const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (auto& c : v) c /= vn;
  const std::array<double, 3> w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                u[0] * v[1] - u[1] * v[0]};

  // Polar panels [0, t1], [t1, pi/2], [pi/2, t2], [t2, pi], each mapped by
  // theta = cut -+ x^2 so nodes cluster at the collar edges t1, t2 where the
  // grazing cusps sit. Row weights carry sin(theta) d theta = sin * 2x dx.
  const double t1 = M_PI / 2 - ha, t2 = M_PI / 2 + ha;
  std::vector<double> row_theta, row_w;
  auto add_panel = [&](double cut, double dir, double len, std::size_t n) {
    const GaussRule g = gauss_legendre_on(n, 0.0, std::sqrt(len));
    for (std::size_t i = 0; i < n; ++i) {
      const double x = g.x[i];
      const double theta = cut + dir * x * x;
      row_theta.push_back(theta);
      row_w.push_back(g.w[i] * 2.0 * x * std::sin(theta));
    }
  };
  add_panel(t1, -1.0, t1, n_out);
  add_panel(t1, +1.0, ha, n_band);
  add_panel(t2, -1.0, ha, n_band);
  add_panel(t2, +1.0, M_PI - t2, n_out);

  fill_radial(q, row_theta, row_w, nphi, u, v, w, nr);
  return q;
}

ShellQuadrature ShellQuadrature::refined(double pmax_factor) const {
  const ShellSpec& s = spec;
  const std::size_t nr2 =
      up(static_cast<std::size_t>(std::ceil(static_cast<double>(s.nr) * pmax_factor)));
  std::size_t nphi2 = up(s.nphi);
  if (nphi2 % 2 != 0) ++nphi2;
  if (s.banded) {
    return make_banded(s.mass, s.pmax * pmax_factor, nr2, up(s.n_out), up(s.n_band),
                       nphi2, s.axis, s.band_half_angle);
  }
  return make(s.mass, s.pmax * pmax_factor, nr2, up(s.ntheta), nphi2);
}

}  // namespace slqft
