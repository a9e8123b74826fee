#include <cmath>
#include <random>

#include "doctest.h"
#include "slqft/fourvector.hpp"
#include "slqft/gauss.hpp"
#include "slqft/parallel.hpp"
#include "slqft/shell.hpp"

using namespace slqft;

TEST_CASE("gauss legendre integrates polynomials exactly") {
  const GaussRule g = gauss_legendre_on(8, 0.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 15);
  CHECK(s == doctest::Approx(1.0 / 16.0).epsilon(1e-13));

  double total_w = 0.0;
  for (double w : gauss_legendre(64).w) total_w += w;
  CHECK(total_w == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss legendre handles smooth transcendental integrands") {
  const GaussRule g = gauss_legendre_on(32, 0.0, M_PI);
  double s = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::sin(g.x[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("minkowski dot and string directions") {
  const FourVector p{2.0, 0.3, -0.4, 1.0};
  const FourVector q{1.0, 1.0, 2.0, -0.5};
  CHECK(mdot(p, q) == doctest::Approx(2.0 - 0.3 + 0.8 + 0.5));

  const StringDirection e(FourVector{0.0, 0.0, 0.0, 2.5});
  CHECK(mdot(e.e, e.e) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e[3] == doctest::Approx(1.0));

  CHECK_THROWS_AS(StringDirection(FourVector{1.0, 0.0, 0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("lorentz transforms preserve the metric") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    const Lorentz L = Lorentz::boost(u(rng), u(rng) + 1.5, u(rng), u(rng)) *
                      Lorentz::rotation(2.0 * u(rng), u(rng), u(rng) + 1.2, u(rng));
    CHECK(L.defect() < 1e-12);
    CHECK((L * L.inverse()).defect() < 1e-12);

    const FourVector a{u(rng) + 2.0, u(rng), u(rng), u(rng)};
    const FourVector b{u(rng) + 2.0, u(rng), u(rng), u(rng)};
    CHECK(mdot(L(a), L(b)) == doctest::Approx(mdot(a, b)).epsilon(1e-11));
  }
}

TEST_CASE("rotation_z_to maps the z axis onto the target") {
  const Lorentz R = Lorentz::rotation_z_to(0.3, -0.2, 0.8);
  const FourVector z{0.0, 0.0, 0.0, 1.0};
  const FourVector img = R(z);
  const double n = std::sqrt(0.3 * 0.3 + 0.04 + 0.64);
  CHECK(img[1] == doctest::Approx(0.3 / n).epsilon(1e-13));
  CHECK(img[2] == doctest::Approx(-0.2 / n).epsilon(1e-13));
  CHECK(img[3] == doctest::Approx(0.8 / n).epsilon(1e-13));
  CHECK_THROWS_AS(Lorentz::rotation_z_to(0.0, 0.0, -1.0), std::domain_error);
}

TEST_CASE("deterministic reduction matches serial bit for bit") {
  const std::size_t n = 100000;
  auto f = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)); };
  const double a = reduce_sum<double>(Exec::serial, n, f);
  const double b = reduce_sum<double>(Exec::openmp, n, f);
  CHECK(a == b);  // exact: identical chunked summation order
}

TEST_CASE("shell quadrature reproduces a radial-angular oracle") {
  // integrand exp(-r^2) (1 + phat_z^2): d3p/(2w) at m=0 gives
  // int r/2 e^{-r^2} dr * int dOmega (1+cos^2) = (1/4)(16 pi/3) = 4 pi/3.
  const ShellQuadrature q = ShellQuadrature::make(0.0, 9.0, 48, 16, 32);
  double s = 0.0;
  for (const ShellNode& nd : q.nodes) {
    const double r = nd.p.spatial_norm();
    const double cz = nd.p[3] / r;
    s += nd.w * std::exp(-r * r) * (1.0 + cz * cz);
  }
  CHECK(s == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-10));

  SUBCASE("massive measure against dense radial reference") {
    const double m = 1.3;
    const ShellQuadrature qm = ShellQuadrature::make(m, 9.0, 48, 12, 24);
    double got = 0.0;
    for (const ShellNode& nd : qm.nodes) {
      const double r = nd.p.spatial_norm();
      got += nd.w * std::exp(-r * r);
      CHECK(nd.p[0] == doctest::Approx(std::sqrt(r * r + m * m)).epsilon(1e-14));
    }
    const GaussRule rad = gauss_legendre_on(400, 0.0, 9.0);
    double want = 0.0;
    for (std::size_t i = 0; i < rad.x.size(); ++i) {
      const double r = rad.x[i];
      want += rad.w[i] * 4.0 * M_PI * r * r / (2.0 * std::sqrt(r * r + m * m)) *
              std::exp(-r * r);
    }
    CHECK(got == doctest::Approx(want).epsilon(1e-11));
  }

  SUBCASE("refinement grows every dimension") {
    const ShellQuadrature f = q.refined();
    CHECK(f.nodes.size() > 2 * q.nodes.size());
    CHECK(f.n_ang > q.n_ang);
  }

  SUBCASE("banded grid matches the same oracle") {
    // tilted band axis: the quadrature must stay exact for smooth
    // integrands regardless of the panel split
    const std::array<double, 3> ax{0.3, -0.4, 0.866};
    const ShellQuadrature b =
        ShellQuadrature::make_banded(0.0, 9.0, 48, 22, 12, 32, ax, 0.26);
    double sb = 0.0;
    for (const ShellNode& nd : b.nodes) {
      const double r = nd.p.spatial_norm();
      const double cz = nd.p[3] / r;
      sb += nd.w * std::exp(-r * r) * (1.0 + cz * cz);
    }
    CHECK(sb == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-10));

    const ShellQuadrature fb = b.refined(1.25);
    CHECK(fb.pmax == doctest::Approx(9.0 * 1.25));
    CHECK(fb.spec.banded);
    CHECK(fb.n_ang > b.n_ang);
    double sf = 0.0;
    for (const ShellNode& nd : fb.nodes) {
      const double r = nd.p.spatial_norm();
      const double cz = nd.p[3] / r;
      sf += nd.w * std::exp(-r * r) * (1.0 + cz * cz);
    }
    CHECK(sf == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-10));
  }
}
