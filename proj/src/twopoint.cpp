#include "slqft/twopoint.hpp"

#include <cmath>
#include <stdexcept>

#include "slqft/wigner.hpp"

namespace slqft {

namespace {

// X.Pi.Y for the massless transverse projector with n = (p0, -pvec).
cplx project_pair(const FourVector& p, const CFourVector& X, const CFourVector& Y) {
  const FourVector n = reference_null(p);
  const double pn = mdot(p, n);
  return -mdot(X, Y) + (mdot(p, X) * mdot(n, Y) + mdot(n, X) * mdot(p, Y)) / pn;
}

// Massive completeness -g + pp/m^2. Finite-eps artifacts scale like
// (rel_eps)^2 / m^2, so keep rel_eps well below the shell mass.
cplx project_pair_massive(const FourVector& p, double m, const CFourVector& X,
                          const CFourVector& Y) {
  return -mdot(X, Y) + mdot(p, X) * mdot(p, Y) / (m * m);
}

}  // namespace

TwoPointEngine::TwoPointEngine(const ShellQuadrature& shell, double rel_eps, Exec exec)
    : shell_(shell), rel_eps_(rel_eps), exec_(exec) {
  if (shell_.mass == 0.0) {
    eplus_.reserve(shell_.n_ang);
    for (const auto& d : shell_.directions)
      eplus_.push_back(helicity_vector(FourVector{1.0, d[0], d[1], d[2]}, +1));
  }
}

std::size_t TwoPointEngine::add_field(const SmearedField& f) {
  FieldData fd{f.polarization, {}, {}, {}, CapSmearing(f.cap, rel_eps_), false, {}, Lorentz::identity()};
  const std::size_t n = shell_.nodes.size();
  fd.t_pos.resize(n);
  fd.t_neg.resize(n);
  const TestFunction& tf = f.profile;
  fd.inv_frame = tf.frame.inverse();

  // bound the pulled-back frequency per axis over the whole shell
  const double wmax = std::sqrt(shell_.pmax * shell_.pmax + shell_.mass * shell_.mass);
  double kmax = 1.0;
  for (int nu = 0; nu < 4; ++nu) {
    double row = std::abs(fd.inv_frame.m[nu][0]) * wmax;
    for (int mu = 1; mu < 4; ++mu) row += std::abs(fd.inv_frame.m[nu][mu]) * shell_.pmax;
    kmax = std::max(kmax, row);
  }
  double t_scale = std::abs(tf.amplitude);
  double rel = 0.0;
  for (int a = 0; a < 4; ++a) {
    fd.tabs[a] = RealFourierTable(tf.axes[a], kmax);
    const double peak = std::abs(fd.tabs[a].value(0.0));
    t_scale *= peak;
    rel += fd.tabs[a].err() / peak;
  }
  fourier_err_ = std::max(fourier_err_, rel * t_scale);

  const cplx phase_i{0.0, 1.0};
#if defined(SLQFT_HAVE_OPENMP)
#pragma omp parallel for schedule(static, 512) if (exec_ == Exec::openmp)
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const FourVector& p = shell_.nodes[i].p;
    const FourVector q = fd.inv_frame(p);
    double prod = fd.tabs[0].value(q[0]);
    for (int a = 1; a < 4; ++a) prod *= fd.tabs[a].value(q[a]);
    const cplx val = tf.amplitude * std::exp(phase_i * mdot(p, tf.center)) * prod;
    fd.t_pos[i] = val;
    fd.t_neg[i] = tf.fourier_neg_of(val);
  }
  build_moments(fd);
  fields_.push_back(std::move(fd));
  descriptors_.push_back(f);
  return fields_.size() - 1;
}

void TwoPointEngine::build_moments(FieldData& fd) const {
  const std::size_t n = shell_.nodes.size();
  fd.V.assign(n, CFourVector{});
  fd.table_ok = fd.smear.supports_angular_table();
  if (fd.table_ok) {
    const std::vector<CFourVector> table = fd.smear.angular_table(shell_.directions);
    for (std::size_t i = 0; i < n; ++i) {
      const ShellNode& nd = shell_.nodes[i];
      fd.V[i] = table[nd.ang] * cplx(1.0 / nd.p.spatial_norm());
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) fd.V[i] = fd.smear.moment(shell_.nodes[i].p);
  }
}

void TwoPointEngine::set_rel_eps(double rel_eps) {
  rel_eps_ = rel_eps;
  for (std::size_t k = 0; k < fields_.size(); ++k) {
    fields_[k].smear = CapSmearing(descriptors_[k].cap, rel_eps_);
    build_moments(fields_[k]);
  }
}

cplx TwoPointEngine::pair_nodes(std::size_t i, std::size_t j, int kind) const {
  const FieldData& fi = fields_[i];
  const FieldData& fj = fields_[j];
  const double m = shell_.mass;
  return reduce_sum<cplx>(exec_, shell_.nodes.size(), [&](std::size_t k) -> cplx {
    const ShellNode& nd = shell_.nodes[k];
    const CFourVector Fi_neg = fi.zeta * fi.t_neg[k];
    const CFourVector Fj_pos = fj.zeta * fj.t_pos[k];
    cplx val;
    switch (kind) {
      case 0: {
        // bra slot smears conj(u), denominator p.e - i eps, hence conj(V)
        const CFourVector X = Fi_neg - conj(fi.V[k]) * mdot(nd.p, Fi_neg);
        const CFourVector Y = Fj_pos - fj.V[k] * mdot(nd.p, Fj_pos);
        val = (m == 0.0) ? project_pair(nd.p, X, Y) : project_pair_massive(nd.p, m, X, Y);
        break;
      }
      case 1: {
        const cplx pi = mdot(nd.p, Fi_neg), pj = mdot(nd.p, Fj_pos);
        val = -mdot(Fi_neg, Fj_pos) - pi * pj * mdot(conj(fi.V[k]), fj.V[k]) +
              pi * mdot(conj(fi.V[k]), Fj_pos) + pj * mdot(fj.V[k], Fi_neg);
        break;
      }
      case 2: {
        const CFourVector Fi_pos = fi.zeta * fi.t_pos[k];
        val = -mdot(conj(Fi_pos), Fj_pos);
        break;
      }
      default:
        val = -2.0 * mdot(nd.p, Fi_neg) * mdot(nd.p, Fj_pos);
    }
    return nd.w * val;
  });
}

cplx TwoPointEngine::wightman(std::size_t i, std::size_t j) const { return pair_nodes(i, j, 0); }
cplx TwoPointEngine::wightman_display(std::size_t i, std::size_t j) const {
  return pair_nodes(i, j, 1);
}
cplx TwoPointEngine::wightman_feynman(std::size_t i, std::size_t j) const {
  return pair_nodes(i, j, 2);
}
cplx TwoPointEngine::wightman_field_strength(std::size_t i, std::size_t j) const {
  return pair_nodes(i, j, 3);
}

std::vector<std::vector<cplx>> TwoPointEngine::gram() const {
  const std::size_t nf = fields_.size();
  const std::size_t nh = shell_.mass == 0.0 ? 2 : 3;
  std::vector<std::vector<cplx>> G(nf, std::vector<cplx>(nf, cplx{0.0, 0.0}));
  std::vector<cplx> b(nf * nh);
  for (std::size_t k = 0; k < shell_.nodes.size(); ++k) {
    const ShellNode& nd = shell_.nodes[k];
    std::array<CFourVector, 3> pol;
    if (shell_.mass == 0.0) {
      pol[0] = conj(eplus_[nd.ang]);  // e_{-} paired with h = +
      pol[1] = eplus_[nd.ang];        // e_{+} paired with h = -
    } else {
      pol = proca_frame(nd.p, shell_.mass);
    }
    for (std::size_t i = 0; i < nf; ++i) {
      const FieldData& fd = fields_[i];
      const CFourVector F = fd.zeta * fd.t_pos[k];
      const CFourVector Y = F - fd.V[k] * mdot(nd.p, F);
      for (std::size_t h = 0; h < nh; ++h) b[i * nh + h] = mdot(pol[h], Y);
    }
    for (std::size_t i = 0; i < nf; ++i)
      for (std::size_t j = 0; j < nf; ++j) {
        cplx s{0.0, 0.0};
        for (std::size_t h = 0; h < nh; ++h)
          s += std::conj(b[i * nh + h]) * b[j * nh + h];
        G[i][j] += nd.w * s;
      }
  }
  return G;
}

std::vector<std::vector<cplx>> TwoPointEngine::gram_feynman() const {
  const std::size_t nf = fields_.size();
  std::vector<std::vector<cplx>> G(nf, std::vector<cplx>(nf, cplx{0.0, 0.0}));
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) G[i][j] = pair_nodes(i, j, 2);
  return G;
}

LadderResult commutator_ladder(const ShellQuadrature& shell, const SmearedField& f1,
                               const SmearedField& f2,
                               const std::array<double, 3>& eps_ladder, Exec exec) {
  auto run = [&](const ShellQuadrature& q) {
    TwoPointEngine eng(q, eps_ladder[0], exec);
    eng.add_field(f1);
    eng.add_field(f2);
    std::array<cplx, 3> c{};
    for (int l = 0; l < 3; ++l) {
      if (l > 0) eng.set_rel_eps(eps_ladder[l]);
      c[l] = eng.commutator(0, 1);
    }
    // Linear extrapolation to eps = 0 from the two finest pairs.
    const cplx c01 = (eps_ladder[0] * c[1] - eps_ladder[1] * c[0]) /
                     (eps_ladder[0] - eps_ladder[1]);
    const cplx c12 = (eps_ladder[1] * c[2] - eps_ladder[2] * c[1]) /
                     (eps_ladder[1] - eps_ladder[2]);
    struct Out {
      cplx extrap;
      double spread;
      cplx w11, w22;
    };
    return Out{c12, std::abs(c01 - c12), eng.wightman(0, 0), eng.wightman(1, 1)};
  };

  // The refined pass also extends the radial span so the base-vs-fine
  // difference sees momentum truncation, not just grid density.
  const auto base = run(shell);
  const auto fine = run(shell.refined(1.2));

  LadderResult r;
  r.value = fine.extrap;
  r.err = fine.spread + std::abs(fine.extrap - base.extrap);
  r.scale = std::sqrt(std::abs(fine.w11) * std::abs(fine.w22));
  return r;
}

}  // namespace slqft
