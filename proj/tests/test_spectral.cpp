#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "slqft/direction_smearing.hpp"
#include "slqft/spectral.hpp"

using namespace slqft;

namespace {

template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

SpectralConfig angled_pair(double theta, double eps) {
  SpectralConfig cfg;
  cfg.e = StringDirection::spatial(std::sin(theta / 2.0), 0.0, std::cos(theta / 2.0));
  cfg.ep = StringDirection::spatial(-std::sin(theta / 2.0), 0.0, std::cos(theta / 2.0));
  cfg.eps = eps;
  return cfg;
}

}  // namespace

TEST_CASE("density vanishes identically below the two-particle threshold") {
  SpectralConfig cfg;
  for (const double s : {-1.0, 0.0, 0.5, 0.9, 1.0})
    CHECK(kl_density_order2(cfg, s) == cplx(0.0, 0.0));
  cfg.m = 0.5;
  CHECK(kl_density_order2(cfg, 0.25) == cplx(0.0, 0.0));
  CHECK(kl_density_order2(cfg, 0.26).real() > 0.0);

  cfg = SpectralConfig{};
  cfg.svals = {0.4, 0.9, 1.0, 1.3};
  const SpectralDensity sw = kl_density_sweep(cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sw.rho[i] == cplx(0.0, 0.0));
    CHECK(sw.err[i] == 0.0);
  }
  CHECK(sw.rho[3].real() > 0.0);
  CHECK(sw.err[3] > 0.0);
}

TEST_CASE("conjugated equal strings give a positive real density") {
  SpectralConfig cfg;
  cfg.eps = 1e-2;
  for (const double s : {1.2, 1.5, 3.0, 8.0}) {
    const cplx r = kl_density_order2(cfg, s);
    CHECK(r.real() > 0.0);
    CHECK(std::abs(r.imag()) < 1e-12 * r.real());
  }

  // rigid rotation of both strings carries the clustered grid along
  const cplx rz = kl_density_order2(cfg, 1.5);
  cfg.e = StringDirection::spatial(1.0, 0.0, 0.0);
  cfg.ep = cfg.e;
  const cplx rx = kl_density_order2(cfg, 1.5);
  CHECK(std::abs(rx - rz) < 1e-10 * std::abs(rz));
}

TEST_CASE("densities scale exactly with the mass") {
  SpectralConfig a = angled_pair(0.7, 1e-2);
  const cplx base = kl_density_order2(a, 1.5);
  SpectralConfig b = a;
  b.m = 2.0;
  const cplx scaled = kl_density_order2(b, 4.0 * 1.5);
  CHECK(std::abs(scaled - 4.0 * base) <= 1e-13 * std::abs(base));
}

TEST_CASE("string choice moves the density beyond the quadrature error") {
  SpectralConfig a = angled_pair(0.4, 0.05);
  a.svals = {1.5};
  const SpectralDensity da = kl_density_sweep(a);

  SpectralConfig b = angled_pair(1.2, 0.05);
  b.svals = {1.5};
  const SpectralDensity db = kl_density_sweep(b);

  CHECK(std::abs(da.rho[0] - db.rho[0]) > 10.0 * (da.err[0] + db.err[0]));
}

TEST_CASE("separated strings converge under the regulator ladder") {
  SpectralConfig cfg = angled_pair(0.4, 0.05);
  cfg.svals = {1.5};
  const SpectralDensity sw = kl_density_sweep(cfg);
  CHECK(sw.err[0] < 2e-2 * std::abs(sw.rho[0]));
  CHECK(sw.rho[0].real() > 0.0);

  // coincident strings diverge like 1/eps; the ladder must refuse to
  // certify a limit there
  SpectralConfig co;
  co.svals = {1.5};
  const SpectralDensity sc = kl_density_sweep(co);
  CHECK(sc.err[0] > 0.3 * std::abs(sc.rho[0]));
}

TEST_CASE("coincident strings match the pole-residue asymptote") {
  // rho(e,e;eps) = g^2 (s-m^2) (1/(16 eps) - 1/(8 pi)) + O(eps): the
  // angular integral collapses to 2pi int dx (1-x^2)/(x^2+eps^2)
  SpectralConfig cfg;
  const double s = 1.5, lead = 0.5 / 16.0;
  cfg.eps = 5e-3;
  const double r1 = kl_density_order2(cfg, s).real() * cfg.eps;
  cfg.eps = 2.5e-3;
  const double r2 = kl_density_order2(cfg, s).real() * cfg.eps;
  CHECK(std::abs(2.0 * r2 - r1 - lead) < 1e-3 * lead);

  cfg.eps = 1e-2;
  const double full = 0.5 * (1.0 / (16.0 * cfg.eps) - 1.0 / (8.0 * M_PI));
  CHECK(kl_density_order2(cfg, s).real() == doctest::Approx(full).epsilon(0.01));
}

TEST_CASE("collinear pairs diverge on the pole-residue power law") {
  const std::vector<double> angles = {0.4, 0.2, 0.1, 0.05};
  const CollinearScan sc = collinear_divergence_scan(1.0, 1.0, 1.5, angles);

  for (std::size_t i = 0; i < angles.size(); ++i) {
    CHECK(sc.rho[i] > 0.0);
    if (i > 0) CHECK(sc.rho[i] > sc.rho[i - 1]);
  }
  // increments against log(1/theta) double per halving: a power law,
  // not a log law
  for (std::size_t i = 0; i + 1 < sc.increments.size(); ++i) {
    const double ratio = sc.increments[i + 1] / sc.increments[i];
    CHECK(ratio > 1.8);
    CHECK(ratio < 2.2);
  }
  // the log-log exponent is the stable fit: near one, drifting down
  for (const double ex : sc.exponents) {
    CHECK(ex > 0.9);
    CHECK(ex < 1.4);
  }
  CHECK(std::abs(sc.exponents[2] - sc.exponents[1]) < 0.2 * sc.exponents[1]);

  // rho(theta) tan(theta) -> g^2 (s-m^2)/8, Richardson in theta
  const double t1 = sc.rho[2] * std::tan(angles[2]);
  const double t2 = sc.rho[3] * std::tan(angles[3]);
  CHECK(std::abs(2.0 * t2 - t1 - 0.0625) < 0.02 * 0.0625);

  CHECK_THROWS_AS(collinear_divergence_scan(1.0, 1.0, 1.5, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(collinear_divergence_scan(1.0, 1.0, 1.5, {0.1, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(collinear_divergence_scan(1.0, 1.0, 1.5, {0.1, -0.05}),
                  std::invalid_argument);
}

TEST_CASE("cap-smeared slots need no regulator") {
  const DirectionCap cap{{0.0, 0.0, 1.0}, 0.3, Lorentz::identity()};
  const CapSmearing sm(cap, 1e-3);
  SpectralConfig cfg;
  cfg.smear_e = &sm;
  cfg.smear_ep = &sm;
  cfg.eps = 0.0;
  const cplx r = kl_density_order2(cfg, 1.5);
  CHECK(r.real() > 0.0);
  CHECK(std::abs(r.imag()) < 1e-10 * r.real());

  // one sharp slot still demands the regulator
  cfg.smear_ep = nullptr;
  CHECK_THROWS_AS(kl_density_order2(cfg, 1.5), singular_string_error);
}

TEST_CASE("spectral configs reject bad input") {
  SpectralConfig cfg;
  cfg.m = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = SpectralConfig{};
  cfg.e = StringDirection{{0.3, 0.0, 0.0, 1.0}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = SpectralConfig{};
  cfg.eps = 0.0;
  CHECK_THROWS_AS(cfg.validate(), singular_string_error);

  cfg = SpectralConfig{};
  cfg.svals = {1.0, 1.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("density is deterministic across execution modes") {
  SpectralConfig cfg = angled_pair(0.4, 1e-2);
  const cplx a = kl_density_order2(cfg, 1.5, Exec::serial);
  const cplx b = kl_density_order2(cfg, 1.5, Exec::openmp);
  CHECK(a.real() == b.real());
  CHECK(a.imag() == b.imag());
}

TEST_CASE("infraparticle weight normalizes exactly") {
  for (const double beta : {0.01, 0.1, 0.5, 0.9})
    CHECK(infraparticle_weak_integral(1.0, beta, [](double) { return 1.0; }) == 1.0);
}

TEST_CASE("pointwise infraparticle weight carries the predicted mass") {
  // independent oracle: integrate rho over s with geometric panels and
  // compare against 1 minus the analytic mass below the lowest panel
  const double scale = 10.0, delta = 1e-12;
  for (const double beta : {0.3, 0.5, 0.9}) {
    double acc = 0.0;
    double lo = delta;
    while (lo < 60.0) {
      const double hi = std::min(lo * 1.3, 60.0);
      acc += simpson(
          [&](double t) { return infraparticle_toy_density(1.0, beta, 1.0 + t); }, lo, hi,
          32);
      lo = hi;
    }
    const double umax = std::pow(6.0 * scale, beta);
    const double total = simpson(
                             [&](double u) {
                               const double t = std::pow(u, 1.0 / beta);
                               return std::exp(-(t / scale) * (t / scale));
                             },
                             0.0, umax, 20000) /
                         beta;
    const double below = std::pow(delta, beta) / (beta * total);
    CHECK(acc == doctest::Approx(1.0 - below).epsilon(1e-7));
  }

  for (const double s : {0.2, 0.9, 1.0})
    CHECK(infraparticle_toy_density(1.0, 0.4, s) == 0.0);
}

TEST_CASE("infraparticle weight collapses onto the threshold as beta drops") {
  const auto w1 = [](double t) { return std::exp(-(t / 40.0) * (t / 40.0)); };
  const auto w2 = [](double t) { return 2.0 + t / (3.0 + t); };

  CHECK(std::abs(infraparticle_weak_integral(1.0, 0.01, w1) - 1.0) < 0.01);
  CHECK(std::abs(infraparticle_weak_integral(1.0, 0.01, w2) - 2.0) < 0.01 * 2.0);

  double prev1 = 1e9, prev2 = 1e9;
  for (const double beta : {0.2, 0.05, 0.01}) {
    const double d1 = std::abs(infraparticle_weak_integral(1.0, beta, w1) - 1.0);
    const double d2 = std::abs(infraparticle_weak_integral(1.0, beta, w2) - 2.0);
    CHECK(d1 < prev1);
    CHECK(d2 < prev2);
    prev1 = d1;
    prev2 = d2;
  }

  // independent integrator on the same flattened axis
  const double beta = 0.01, umax = std::pow(60.0, beta);
  const auto tail_u = [&](double u) {
    const double t = std::pow(u, 1.0 / beta);
    return std::exp(-(t / 10.0) * (t / 10.0));
  };
  const double ref = simpson([&](double u) { return tail_u(u) * w2(std::pow(u, 1.0 / beta)); },
                             0.0, umax, 20000) /
                     simpson(tail_u, 0.0, umax, 20000);
  CHECK(infraparticle_weak_integral(1.0, beta, w2) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("infraparticle weight rejects bad arguments") {
  CHECK_THROWS_AS(infraparticle_toy_density(1.0, 0.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(infraparticle_toy_density(1.0, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(infraparticle_toy_density(-1.0, 0.5, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(infraparticle_weak_integral(1.0, 1.2, [](double) { return 1.0; }),
                  std::invalid_argument);
  CHECK_THROWS_AS(infraparticle_weak_integral(0.0, 0.5, [](double) { return 1.0; }),
                  std::invalid_argument);
}
