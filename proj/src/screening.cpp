#include "slqft/screening.hpp"

#include <cmath>
#include <stdexcept>

#include "slqft/gauss.hpp"

namespace slqft {

namespace {

double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// int_0^R r^2 sinc(kr) dr
double ball_moment(double R, double k) {
  const double x = k * R;
  if (std::abs(x) < 1e-3) return R * R * R * (1.0 / 3.0 - x * x / 30.0);
  return (std::sin(x) - x * std::cos(x)) / (k * k * k);
}

}  // namespace

void ScreenedModelParams::validate() const {
  if (!(m > 0.0)) throw std::invalid_argument("vector meson mass must be positive");
  if (!(M >= 0.0)) throw std::invalid_argument("scalar mass must be nonnegative");
  if (!std::isfinite(g)) throw std::invalid_argument("coupling must be finite");
}

VertexCoefficients screened_vertex_coefficients(const ScreenedModelParams& p) {
  p.validate();
  VertexCoefficients v;
  v.aar = p.g * p.m;
  v.rrr = -p.g * p.M * p.M / (2.0 * p.m);
  v.aarr = p.g * p.g / 2.0;
  v.rrrr = -p.g * p.g * p.M * p.M / (8.0 * p.m * p.m);
  v.composite = p.g / (2.0 * p.m);
  return v;
}

void ChargeCutoff::validate() const {
  if (!(radius > 0.0) || !(shell > 0.0))
    throw std::invalid_argument("cutoff radius and shell width must be positive");
}

double ChargeCutoff::profile(double r) const {
  if (r <= radius) return 1.0;
  if (r >= radius + shell) return 0.0;
  const double t = (r - radius) / shell;
  return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

double ChargeCutoff::transform(double k) const {
  double s = ball_moment(radius, k);
  const std::size_t panels = 1 + static_cast<std::size_t>(std::abs(k) * shell / 20.0);
  for (std::size_t j = 0; j < panels; ++j) {
    const double a = radius + shell * static_cast<double>(j) / static_cast<double>(panels);
    const double b = radius + shell * static_cast<double>(j + 1) / static_cast<double>(panels);
    const GaussRule g = gauss_legendre_on(16, a, b);
    for (std::size_t i = 0; i < 16; ++i)
      s += g.w[i] * g.x[i] * g.x[i] * profile(g.x[i]) * sinc(k * g.x[i]);
  }
  return 4.0 * M_PI * s;
}

namespace {

double charge_norm_sweep(const ChargeCutoff& c, double mu, std::size_t order, double width,
                         Exec exec) {
  const double pmax = 40.0 / c.shell;
  const std::size_t panels = static_cast<std::size_t>(std::ceil(pmax / width));
  return reduce_sum<double>(exec, panels, [&](std::size_t j) {
    const GaussRule g =
        gauss_legendre_on(order, width * static_cast<double>(j), width * static_cast<double>(j + 1));
    double s = 0.0;
    for (std::size_t i = 0; i < order; ++i) {
      const double p = g.x[i];
      const double f = c.transform(p);
      s += g.w[i] * p * p * 0.5 * std::sqrt(mu * mu + p * p) * f * f;
    }
    return s;
  });
}

}  // namespace

ChargeValue goldstone_charge_norm(const ChargeCutoff& c, double mu, double v, Exec exec) {
  c.validate();
  if (!(mu >= 0.0)) throw std::invalid_argument("boson mass must be nonnegative");
  if (v == 0.0) return {0.0, 0.0};
  const double width = M_PI / (c.radius + c.shell);
  const double n1 = charge_norm_sweep(c, mu, 10, width, exec);
  const double n2 = charge_norm_sweep(c, mu, 14, width / 1.5, exec);
  ChargeValue out;
  out.value = 4.0 * M_PI * v * v * n2;
  out.err = 4.0 * M_PI * v * v * std::abs(n2 - n1);
  return out;
}

ShellWavePacket ShellWavePacket::normalized(double mass, double p0, double sigma) {
  if (!(mass > 0.0) || !(sigma > 0.0) || !(p0 > 0.0))
    throw std::invalid_argument("packet parameters must be positive");
  ShellWavePacket w;
  w.mass = mass;
  w.p0 = p0;
  w.sigma = sigma;
  w.amp = 1.0;
  w.amp = 1.0 / std::sqrt(packet_overlap(w, w));
  return w;
}

double ShellWavePacket::operator()(double p) const {
  if (p < lo() || p > hi()) return 0.0;
  const double t = (p - p0) / sigma;
  return amp * std::exp(-0.5 * t * t);
}

double ShellWavePacket::lo() const { return std::max(0.0, p0 - 5.0 * sigma); }
double ShellWavePacket::hi() const { return p0 + 5.0 * sigma; }

double packet_overlap(const ShellWavePacket& a, const ShellWavePacket& b) {
  if (a.mass != b.mass) throw std::invalid_argument("packets live on different shells");
  const double lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
  if (lo >= hi) return 0.0;
  const GaussRule g = gauss_legendre_on(64, lo, hi);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double p = g.x[i];
    s += g.w[i] * p * p / (2.0 * std::sqrt(a.mass * a.mass + p * p)) * a(p) * b(p);
  }
  return 4.0 * M_PI * s;
}

void FormFactor::validate() const {
  if (!eval) throw std::invalid_argument("form factor has no evaluation");
  const double f0 = eval(0.0);
  if (kind == Kind::screened && std::abs(f0) > 1e-12)
    throw std::invalid_argument("screened form factor must vanish at zero momentum transfer");
  if (kind == Kind::unscreened && std::abs(f0) <= 1e-12)
    throw std::invalid_argument("unscreened form factor must carry a charge at zero transfer");
}

FormFactor FormFactor::unit(double charge) {
  FormFactor f;
  f.kind = Kind::unscreened;
  f.eval = [charge](double) { return charge; };
  return f;
}

FormFactor FormFactor::screened_pole(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("pole scale must be positive");
  FormFactor f;
  f.kind = Kind::screened;
  const double l2 = lambda * lambda;
  f.eval = [l2](double s) { return s / (s - l2); };
  return f;
}

namespace {

// radial reduction of the double shell integral: for rotation-invariant
// packets int d^3p d^3q G = 8 pi^2 int dp dq p q int_{|p-q|}^{p+q} du u G
double me_sweep(const ChargeCutoff& c, const FormFactor& F, const ShellWavePacket& a,
                const ShellWavePacket& b, std::size_t np, std::size_t nu, double width,
                Exec exec) {
  const GaussRule gp = gauss_legendre_on(np, a.lo(), a.hi());
  const GaussRule gq = gauss_legendre_on(np, b.lo(), b.hi());
  return reduce_sum<double>(exec, np, [&](std::size_t i) {
    const double p = gp.x[i];
    const double wp = std::sqrt(a.mass * a.mass + p * p);
    const double fp = gp.w[i] * p * a(p);
    double acc = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const double q = gq.x[j];
      const double wq = std::sqrt(b.mass * b.mass + q * q);
      const double fq = gq.w[j] * q * b(q);
      const double base = fp * fq * (wp + wq) / (2.0 * 4.0 * wp * wq);
      const double dw2 = (wp - wq) * (wp - wq);
      const double ulo = std::abs(p - q), uhi = p + q;
      const std::size_t panels =
          1 + static_cast<std::size_t>(std::ceil((uhi - ulo) / width));
      double us = 0.0;
      for (std::size_t k = 0; k < panels; ++k) {
        const double ua = ulo + (uhi - ulo) * static_cast<double>(k) / static_cast<double>(panels);
        const double ub =
            ulo + (uhi - ulo) * static_cast<double>(k + 1) / static_cast<double>(panels);
        const GaussRule gu = gauss_legendre_on(nu, ua, ub);
        for (std::size_t l = 0; l < nu; ++l) {
          const double u = gu.x[l];
          us += gu.w[l] * u * c.transform(u) * F.eval(dw2 - u * u);
        }
      }
      acc += base * us;
    }
    return acc;
  });
}

}  // namespace

ChargeME screened_charge_matrix_element(const ChargeCutoff& c, const FormFactor& F,
                                        const ShellWavePacket& psi1,
                                        const ShellWavePacket& psi2, Exec exec) {
  c.validate();
  F.validate();
  if (psi1.mass != psi2.mass) throw std::invalid_argument("packets live on different shells");
  const double width = M_PI / (c.radius + c.shell);
  const double pref = 2.0 / std::pow(2.0 * M_PI, 3) * 8.0 * M_PI * M_PI;
  const double v1 = pref * me_sweep(c, F, psi1, psi2, 48, 8, width, exec);
  const double v2 = pref * me_sweep(c, F, psi1, psi2, 64, 10, width / 1.5, exec);
  ChargeME out;
  out.value = v2;
  out.err = std::abs(v2 - v1);
  return out;
}

}  // namespace slqft
