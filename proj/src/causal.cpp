#include "slqft/causal.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace slqft {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Golden-section minimum of a convex function on [0, hi].
double golden_min(const std::function<double(double)>& f, double hi) {
  double a = 0.0, b = hi;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

struct RayProblem {
  // d(s,t) = d0 + s e1 - t e2 with purely spatial unit cone axes.
  FourVector d0;
  std::array<double, 3> e1, e2;
  double pad0, pad1, pad2;  // R1+R2, cone-spread slopes
  double sigma;             // time sign under test

  // Signed Euclidean clearance of d(s,t) from the sigma branch of the light
  // cone, minus the accumulated geometric padding. Convex in (s,t).
  double operator()(double s, double t) const {
    const double dx = d0[1] + s * e1[0] - t * e2[0];
    const double dy = d0[2] + s * e1[1] - t * e2[1];
    const double dz = d0[3] + s * e1[2] - t * e2[2];
    const double space = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double time = d0[0];
    return (space - sigma * time) / std::sqrt(2.0) - (pad0 + pad1 * s + pad2 * t);
  }
};

// Global minimum over the closed quadrant, or -inf if unbounded below.
double quadrant_min(const RayProblem& f, double scale) {
  // Unboundedness shows up as descent at the far corner of a huge box.
  const double far = 1e7 * scale;
  const double probe = f(far, far);
  if (probe < f(far * 0.5, far * 0.5) && probe < 0.0)
    return -std::numeric_limits<double>::infinity();

  double s = 0.0, t = 0.0;
  double best = f(s, t);
  double hi = 64.0 * scale;
  for (int sweep = 0; sweep < 60; ++sweep) {
    // Grow the bracket while the edge still descends.
    while ((f(hi, t) < f(hi * 0.5, t) || f(s, hi) < f(s, hi * 0.5)) && hi < far) hi *= 2.0;
    const double ns = golden_min([&](double u) { return f(u, t); }, hi);
    const double nt = golden_min([&](double u) { return f(ns, u); }, hi);
    const double v = f(ns, nt);
    s = ns;
    t = nt;
    if (v >= best - 1e-14 * (1.0 + std::abs(best))) {
      best = std::min(best, v);
      break;
    }
    best = v;
  }
  return best;
}

}  // namespace

bool strings_spacelike_separated(const StringConfig& c1, const StringConfig& c2,
                                 double extra_margin) {
  RayProblem f;
  f.d0 = c1.center - c2.center;
  f.e1 = c1.axis;
  f.e2 = c2.axis;
  for (auto* e : {&f.e1, &f.e2}) {
    const double n = std::sqrt((*e)[0] * (*e)[0] + (*e)[1] * (*e)[1] + (*e)[2] * (*e)[2]);
    for (double& v : *e) v /= n;
  }
  f.pad0 = c1.radius + c2.radius + extra_margin;
  f.pad1 = 2.0 * std::sin(0.5 * c1.half_angle);
  f.pad2 = 2.0 * std::sin(0.5 * c2.half_angle);

  const double scale = 1.0 + f.d0.spatial_norm() + std::abs(f.d0[0]) + f.pad0;
  for (double sigma : {1.0, -1.0}) {
    f.sigma = sigma;
    if (!(quadrant_min(f, scale) > 0.0)) return false;
  }
  return true;
}

}  // namespace slqft
