#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "slqft/direction_smearing.hpp"
#include "slqft/parallel.hpp"
#include "slqft/shell.hpp"
#include "slqft/testfunction.hpp"

namespace slqft {

/// One smeared string-localized vector field: A(f, cap) with
/// f^mu(x) = zeta^mu t(x) and the string direction averaged over the cap.
struct SmearedField {
  CFourVector polarization{cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
  TestFunction profile{};
  DirectionCap cap{};
};

/// Two-point machinery over one mass shell at one string regulator.
/// Wightman pairings are built from the helicity (mass > 0: Proca frame)
/// completeness projector contracted with cap-smeared intertwiner moments,
/// so wightman() is the exact one-particle pairing of the regularized
/// field, and the one-particle Gram is positive for any positive-weight
/// quadrature.
class TwoPointEngine {
 public:
  TwoPointEngine(const ShellQuadrature& shell, double rel_eps, Exec exec = Exec::serial);

  std::size_t add_field(const SmearedField& f);

  /// Re-regularize: rebuilds only the direction moments.
  void set_rel_eps(double rel_eps);

  /// <A_i(f_i) A_j(f_j)> one-particle pairing.
  cplx wightman(std::size_t i, std::size_t j) const;

  /// Same pairing through the closed-form kernel display (no projector
  /// reference terms). Agrees with wightman() up to O(rel_eps).
  cplx wightman_display(std::size_t i, std::size_t j) const;

  /// Pairing with kernel -g^{mu nu} (covariant pointlike propagator).
  cplx wightman_feynman(std::size_t i, std::size_t j) const;

  /// Field-strength pairing, kernel -2 (p.f1)(p.f2); string independent.
  cplx wightman_field_strength(std::size_t i, std::size_t j) const;

  cplx commutator(std::size_t i, std::size_t j) const {
    return wightman(i, j) - wightman(j, i);
  }

  /// Hermitian PSD Gram <psi_i | psi_j> of the one-particle states, via
  /// explicit helicity amplitudes.
  std::vector<std::vector<cplx>> gram() const;

  /// Same states paired with the -g^{mu nu} kernel; indefinite.
  std::vector<std::vector<cplx>> gram_feynman() const;

  double max_fourier_err() const { return fourier_err_; }
  std::size_t field_count() const { return fields_.size(); }
  const ShellQuadrature& shell() const { return shell_; }

 private:
  struct FieldData {
    CFourVector zeta;
    std::vector<cplx> t_pos, t_neg;   // that(p), that(-p) per node
    std::vector<CFourVector> V;       // cap moment per node
    CapSmearing smear;
    bool table_ok;
    std::array<RealFourierTable, 4> tabs;  // per-axis profile transforms
    Lorentz inv_frame = Lorentz::identity();
  };

  void build_moments(FieldData& fd) const;
  cplx pair_nodes(std::size_t i, std::size_t j, int kind) const;

  ShellQuadrature shell_;
  double rel_eps_;
  Exec exec_;
  double fourier_err_ = 0.0;
  std::vector<FieldData> fields_;
  std::vector<SmearedField> descriptors_;
  // Helicity vectors per angular index (massless shells).
  std::vector<CFourVector> eplus_;
};

/// Commutator with an eps ladder and linear Richardson extrapolation to
/// eps -> 0, plus a refined-grid quadrature error estimate.
struct LadderResult {
  cplx value{0.0, 0.0};       // extrapolated commutator
  double err = 0.0;           // extrapolation spread + refinement shift
  double scale = 1.0;         // sqrt(|W11 W22|) for relative comparison
};

LadderResult commutator_ladder(const ShellQuadrature& shell, const SmearedField& f1,
                               const SmearedField& f2,
                               const std::array<double, 3>& eps_ladder, Exec exec);

}  // namespace slqft
