#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace slqft {

using cplx = std::complex<double>;

/// Metric signature (+,-,-,-). Index 0 is time.
struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  FourVector() = default;
  FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }

  FourVector operator+(const FourVector& o) const {
    return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
  }
  FourVector operator-(const FourVector& o) const {
    return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
  }
  FourVector operator*(double s) const { return {s * c[0], s * c[1], s * c[2], s * c[3]}; }
  FourVector operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }

  double spatial_norm() const { return std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]); }
};

inline FourVector operator*(double s, const FourVector& v) { return v * s; }

struct CFourVector {
  std::array<cplx, 4> c{};

  CFourVector() = default;
  CFourVector(cplx t, cplx x, cplx y, cplx z) : c{t, x, y, z} {}
  CFourVector(const FourVector& v) : c{v[0], v[1], v[2], v[3]} {}

  cplx& operator[](std::size_t i) { return c[i]; }
  cplx operator[](std::size_t i) const { return c[i]; }

  CFourVector operator+(const CFourVector& o) const {
    return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]};
  }
  CFourVector operator-(const CFourVector& o) const {
    return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]};
  }
  CFourVector operator*(cplx s) const { return {s * c[0], s * c[1], s * c[2], s * c[3]}; }
  CFourVector operator-() const { return {-c[0], -c[1], -c[2], -c[3]}; }

  double norm() const {
    double s = 0.0;
    for (const cplx& z : c) s += std::norm(z);
    return std::sqrt(s);
  }
};

inline CFourVector operator*(cplx s, const CFourVector& v) { return v * s; }

inline CFourVector conj(const CFourVector& v) {
  return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2]), std::conj(v[3])};
}

/// Minkowski product. Bilinear: no implicit conjugation, conjugate at call
/// sites where a sesquilinear pairing is meant.
inline double mdot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}
inline cplx mdot(const CFourVector& a, const CFourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}
inline cplx mdot(const CFourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}
inline cplx mdot(const FourVector& a, const CFourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline constexpr double metric_diag(std::size_t mu) { return mu == 0 ? 1.0 : -1.0; }

/// Spacelike unit direction, normalized to e.e = -1 on construction.
struct StringDirection {
  FourVector e;

  explicit StringDirection(const FourVector& v) {
    const double q = mdot(v, v);
    if (!(q < 0.0)) throw std::invalid_argument("StringDirection: vector must be spacelike");
    const double s = 1.0 / std::sqrt(-q);
    e = v * s;
  }

  /// Purely spatial direction from a 3-vector.
  static StringDirection spatial(double x, double y, double z) {
    return StringDirection(FourVector{0.0, x, y, z});
  }

  double operator[](std::size_t i) const { return e[i]; }
};

/// Raised when a string-direction denominator p.e is evaluated at eps = 0
/// too close to its zero set.
struct singular_string_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Proper orthochronous Lorentz transform, row-major Lambda^mu_nu.
struct Lorentz {
  std::array<std::array<double, 4>, 4> m{};

  static Lorentz identity() {
    Lorentz l;
    for (int i = 0; i < 4; ++i) l.m[i][i] = 1.0;
    return l;
  }

  /// Boost with rapidity chi along a spatial unit axis.
  static Lorentz boost(double chi, double ax, double ay, double az) {
    const double n = std::sqrt(ax * ax + ay * ay + az * az);
    if (n == 0.0) throw std::invalid_argument("Lorentz::boost: zero axis");
    ax /= n; ay /= n; az /= n;
    const double ch = std::cosh(chi), sh = std::sinh(chi);
    Lorentz l = identity();
    l.m[0][0] = ch;
    l.m[0][1] = sh * ax; l.m[0][2] = sh * ay; l.m[0][3] = sh * az;
    l.m[1][0] = sh * ax; l.m[2][0] = sh * ay; l.m[3][0] = sh * az;
    const double a[3] = {ax, ay, az};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        l.m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (ch - 1.0) * a[i] * a[j];
    return l;
  }

  /// Rotation by angle about a spatial unit axis (Rodrigues).
  static Lorentz rotation(double angle, double ax, double ay, double az) {
    const double n = std::sqrt(ax * ax + ay * ay + az * az);
    if (n == 0.0) throw std::invalid_argument("Lorentz::rotation: zero axis");
    ax /= n; ay /= n; az /= n;
    const double c = std::cos(angle), s = std::sin(angle);
    const double a[3] = {ax, ay, az};
    Lorentz l = identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double eps = 0.0;  // epsilon_{ijk} a_k
        for (int k = 0; k < 3; ++k) {
          const int perm = (i == j || j == k || k == i)
                               ? 0
                               : (((j - i + 3) % 3 == 1) ? 1 : -1);
          eps += perm * a[k];
        }
        l.m[i + 1][j + 1] = c * (i == j ? 1.0 : 0.0) + (1.0 - c) * a[i] * a[j] - s * eps;
      }
    return l;
  }

  /// Rotation taking the z axis to the given (non-antiparallel) direction.
  static Lorentz rotation_z_to(double nx, double ny, double nz);

  Lorentz operator*(const Lorentz& o) const {
    Lorentz r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  FourVector operator()(const FourVector& v) const {
    FourVector r;
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += m[i][k] * v[k];
      r[i] = s;
    }
    return r;
  }

  CFourVector operator()(const CFourVector& v) const {
    CFourVector r;
    for (int i = 0; i < 4; ++i) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += m[i][k] * v[k];
      r[i] = s;
    }
    return r;
  }

  /// Inverse via g Lambda^T g, exact for Lorentz matrices.
  Lorentz inverse() const {
    Lorentz r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        r.m[i][j] = metric_diag(i) * metric_diag(j) * m[j][i];
    return r;
  }

  /// Max deviation of Lambda^T g Lambda from g plus orthochronous/proper checks.
  double defect() const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += m[k][i] * metric_diag(k) * m[k][j];
        const double g = (i == j) ? metric_diag(i) : 0.0;
        d = std::max(d, std::abs(s - g));
      }
    if (m[0][0] < 0.0) d = std::max(d, 1.0);
    return d;
  }
};

inline Lorentz Lorentz::rotation_z_to(double nx, double ny, double nz) {
  const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (n == 0.0) throw std::invalid_argument("rotation_z_to: zero direction");
  nx /= n; ny /= n; nz /= n;
  const double s2 = nx * nx + ny * ny;
  if (nz < 0.0 && s2 < 1e-12) {
    // Chart boundary: the target is (anti)parallel to -z, axis undefined.
    throw std::domain_error("rotation_z_to: direction too close to -z");
  }
  if (s2 == 0.0) return identity();
  // Axis z x n, angle acos(nz).
  const double axis_n = std::sqrt(s2);
  return rotation(std::acos(std::max(-1.0, std::min(1.0, nz))), -ny / axis_n, nx / axis_n, 0.0);
}

}  // namespace slqft
