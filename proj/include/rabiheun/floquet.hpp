// Floquet reduction for a sinusoidally driven two-level system.
//
// The sine drive's symmetry group reduces the one-period propagator to the
// quarter-period data a = psi1(pi/2), b = psi2(pi/2):
//   U(pi,0)  = U(pi/2,0)^T U(pi/2,0)   with purely imaginary off-diagonals i r,
//   U(2pi,0) = (T U(pi,0))^2           with T the row-swap matrix,
// so two real numbers r = 2 Im(conj(a) b) and alpha = arg(a^2 + b^2)
// determine everything, and the principal quasienergy is
//   eps = -(1/pi) arcsin(r),
// the sign fixed so that eps -> +nu/2 in the free-precession limit.
#pragma once

#include <vector>

#include "rabiheun/heun.hpp"
#include "rabiheun/types.hpp"

namespace rabiheun {

// Quarter-period state reached from (1, 0): a = psi1(pi/2), b = psi2(pi/2).
// |a|^2 + |b|^2 = 1 up to series truncation error.
struct QuarterData {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};
    int terms_used = 0;    // max over the two series involved
    bool converged = true;
};

// The two real numbers parameterizing the half-period propagator.
// alpha is a principal argument in (-pi, pi]; at |r| = 1 the propagator is
// alpha-independent and alpha is reported as 0 with the degeneracy flag set.
struct MonodromyData {
    double r = 0.0;
    double alpha = 0.0;
    bool alpha_degenerate = false;
};

// Principal dimensionless quasienergy, eps in [-1/2, 1/2]; the physical pair
// is {+eps, -eps} and satisfies sin(pi*eps) = -r.
struct Quasienergy {
    double epsilon = 0.0;

    double plus() const { return epsilon; }
    double minus() const { return -epsilon; }
};

// Quarter-period data from the two series values at z = 1/2:
//   a = e^{i f/2} eta_pp,
//   b = -i nu e^{-i f/2} (1/sqrt(2)) conj(eta_mp).
QuarterData quarter_data(const PhysicalParams& p, const TruncationControl& ctrl);

// r = 2 Im(conj(a) b), alpha = arg(a^2 + b^2).
// |r| in (1, 1 + 1e-8] is clamped to +-1 (roundoff); beyond that throws
// std::runtime_error (a broken series, not roundoff).
MonodromyData r_alpha(const QuarterData& q);

// eps = -(1/pi) arcsin(r).
Quasienergy quasienergy(const MonodromyData& m);

// Eigenvalues i r +- sqrt(1 - r^2) of the row-swapped half-period propagator;
// their squares are the monodromy eigenvalues e^{-2 pi i (-+eps)}.
std::pair<cplx, cplx> delta_eigenvalues(const MonodromyData& m);

// U(pi, 0): diagonal sqrt(1-r^2) e^{+-i alpha}, off-diagonal i r.
EvolutionMatrix half_monodromy(const MonodromyData& m);

// U(2pi, 0): diagonal 1 - 2 r^2, off-diagonal 2 i r sqrt(1-r^2) e^{-+i alpha}.
EvolutionMatrix full_monodromy(const MonodromyData& m);

// U(2pi, 0)^k in closed form: theta = arcsin(r),
//   [[cos 2k theta, i sin(2k theta) e^{-i alpha}],
//    [i sin(2k theta) e^{i alpha}, cos 2k theta]].
// Exact for |r| = 1 as well; k may be negative.
EvolutionMatrix monodromy_power(const MonodromyData& m, long long k);

// One derived quasienergy branch: energy = sign * E + n * omega (hbar = 1).
struct BranchEnergy {
    int n = 0;
    int sign = +1;
    double energy = 0.0;
};

struct BranchFan {
    double epsilon = 0.0;
    bool converged = true;
    std::vector<BranchEnergy> energies;
};

// The branch family +-E + n*omega for n in [n_min, n_max], from the
// dimensionless pipeline applied to d.reduced().
BranchFan branch_energies(const DimensionalParams& d, int n_min, int n_max,
                          const TruncationControl& ctrl);

}  // namespace rabiheun
