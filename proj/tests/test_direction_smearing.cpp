#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "slqft/direction_smearing.hpp"
#include "slqft/fourvector.hpp"

using namespace slqft;
using cplx = std::complex<double>;

namespace {

double rel_err(const CFourVector& a, const CFourVector& b) {
  double num = 0.0, den = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    num += std::norm(a[mu] - b[mu]);
    den += std::norm(a[mu]) + std::norm(b[mu]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("cap moment matches brute-force quadrature") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double rel_eps : {1e-2, 1e-3}) {
    // the reference grid must resolve the azimuthal peak width sqrt(rel_eps)
    const std::size_t nth = rel_eps < 5e-3 ? 2400 : 500;
    const std::size_t nph = rel_eps < 5e-3 ? 3200 : 600;
    for (int it = 0; it < 6; ++it) {
      DirectionCap cap;
      cap.axis = {u(rng), u(rng), u(rng) + 1.3};
      cap.half_angle = 0.15 + 0.5 * std::abs(u(rng));
      const CapSmearing sm(cap, rel_eps);
      const FourVector p{2.0, u(rng), u(rng), u(rng) + 1.2};
      const CFourVector fast = sm.moment(p);
      const CFourVector slow = cap_moment_brute(cap, p, rel_eps, nth, nph);
      CHECK(rel_err(fast, slow) < 2e-6);
    }
  }
}

TEST_CASE("grazing incidence stays accurate") {
  // momentum direction nearly tangent to the cap boundary, where the
  // denominator zero set clips the cap edge
  DirectionCap cap;
  cap.axis = {0.0, 0.0, 1.0};
  cap.half_angle = 0.3;
  const double rel_eps = 1e-2;
  const CapSmearing sm(cap, rel_eps);
  for (double alpha : {M_PI / 2 - 0.3, M_PI / 2 - 0.05, M_PI / 2, M_PI / 2 + 0.28}) {
    const FourVector p{1.5, std::sin(alpha), 0.0, std::cos(alpha)};
    const CFourVector fast = sm.moment(p);
    const CFourVector slow = cap_moment_brute(cap, p, rel_eps, 900, 1200);
    CHECK(rel_err(fast, slow) < 5e-6);
  }
}

TEST_CASE("moment is homogeneous of degree minus one") {
  DirectionCap cap;
  cap.axis = {0.2, -0.4, 1.0};
  cap.half_angle = 0.4;
  const CapSmearing sm(cap, 3e-3);
  const FourVector p{1.0, 0.3, 0.8, -0.2};
  const CFourVector v1 = sm.moment(p);
  for (double lam : {2.0, 17.0}) {
    FourVector q = p;
    for (int mu = 1; mu < 4; ++mu) q[mu] *= lam;
    q[0] *= lam;
    const CFourVector v2 = sm.moment(q);
    for (int mu = 0; mu < 4; ++mu) CHECK(std::abs(v2[mu] * lam - v1[mu]) < 1e-12 * std::abs(v1[mu]) + 1e-15);
  }
}

TEST_CASE("angular table reproduces per-point moments") {
  DirectionCap cap;
  cap.axis = {0.1, 0.9, 0.6};
  cap.half_angle = 0.35;
  cap.frame = Lorentz::rotation(0.8, 0.3, -0.5, 1.0);
  const CapSmearing sm(cap, 5e-3);
  REQUIRE(sm.supports_angular_table());

  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::array<double, 3>> dirs;
  for (int k = 0; k < 24; ++k) {
    double x = u(rng), y = u(rng), z = u(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    dirs.push_back({x / n, y / n, z / n});
  }
  const auto table = sm.angular_table(dirs);
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const double r = 0.3 + 2.0 * std::abs(u(rng));
    const FourVector p{r, r * dirs[k][0], r * dirs[k][1], r * dirs[k][2]};
    const CFourVector via_table = table[k] * cplx(1.0 / r);
    CHECK(rel_err(via_table, sm.moment(p)) < 1e-12);
  }
}

TEST_CASE("boosted caps pull the momentum back to the base frame") {
  DirectionCap cap;
  cap.axis = {0.0, 1.0, 0.4};
  cap.half_angle = 0.3;
  DirectionCap boosted = cap;
  boosted.frame = Lorentz::boost(0.5, 1.0, -0.2, 0.4);

  const CapSmearing sm_boosted(boosted, 4e-3);
  CHECK_FALSE(sm_boosted.supports_angular_table());

  const FourVector p{2.2, 0.7, -0.3, 1.1};
  const CFourVector direct = sm_boosted.moment(p);
  const CFourVector brute = cap_moment_brute(boosted, p, 4e-3, 500, 500);
  CHECK(rel_err(direct, brute) < 2e-6);
}

TEST_CASE("scalar contraction recovers the cap weight as eps shrinks") {
  // p.V(p) = int w (p.e)/(p.e + i eps |p|) -> 1 linearly in eps away from
  // the singular set, fixing both sign convention and normalization
  DirectionCap cap;
  cap.axis = {0.0, 0.0, 1.0};
  cap.half_angle = 0.2;
  const FourVector p{1.0, 0.25, 0.1, 0.95};  // well off tangency
  double prev_defect = 0.0;
  for (double rel_eps : {4e-2, 1e-2, 2.5e-3}) {
    const CapSmearing sm(cap, rel_eps);
    const cplx s = mdot(CFourVector(p), sm.moment(p));
    const double defect = std::abs(s - 1.0);
    if (prev_defect > 0.0) CHECK(defect < 0.35 * prev_defect);
    prev_defect = defect;
  }
  CHECK(prev_defect < 2e-2);
}

TEST_CASE("invalid construction is rejected") {
  DirectionCap cap;
  cap.half_angle = 0.0;
  CHECK_THROWS_AS(CapSmearing(cap, 1e-3), std::invalid_argument);
  cap.half_angle = 0.3;
  CHECK_THROWS_AS(CapSmearing(cap, 0.0), std::invalid_argument);
  const CapSmearing ok(cap, 1e-3);
  CHECK_THROWS_AS(ok.moment(FourVector{0.0, 0.0, 0.0, 0.0}), std::invalid_argument);
}
