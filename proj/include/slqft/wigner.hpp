#pragma once

#include <array>

#include "slqft/fourvector.hpp"

namespace slqft {

/// Massless helicity polarization vector e_h(p), h = +1 or -1.
/// At p along +z: e_+ = (0, 1, -i, 0)/sqrt(2), e_- = (0, 1, +i, 0)/sqrt(2);
/// general p by the rotation taking z to phat. Directions within 1e-6 rad
/// of -z are outside the chart and rejected.
CFourVector helicity_vector(const FourVector& p, int h);

/// Null reference vector n = (p^0, -pvec) opposite to p on the light cone.
FourVector reference_null(const FourVector& p);

/// Sum_h e_h^mu conj(e_h)^nu as a 4x4 array; equals the transverse
/// projector -g^{mu nu} + (p^mu n^nu + n^mu p^nu)/(p.n) for massless p.
std::array<std::array<cplx, 4>, 4> helicity_completeness(const FourVector& p);

/// Massive spin-1 frame: three orthonormal spacelike polarizations
/// eps_lambda(p), lambda = 0,1,2 labeling boosted x,y,z axes.
/// eps^0 = pvec.ehat/m, epsvec = ehat + pvec (pvec.ehat)/(m(p^0+m)).
std::array<CFourVector, 3> proca_frame(const FourVector& p, double mass);

}  // namespace slqft
