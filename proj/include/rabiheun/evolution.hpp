// Full-period time evolution assembled from first-quarter series data.
//
// On [0, pi/2] the state comes straight from the two confluent-Heun series
// (z = sin^2(tau/2) stays in [0, 1/2], comfortably inside the convergence
// disc). The remaining three quarters are glued on by the drive's sine
// symmetries, which need only (r, alpha):
//   second quarter: U(pi/2 + t, 0) = conj(U(pi/2 - t, 0)) U(pi, 0)
//   second half:    U(pi  + t, 0) = T U(t, 0) T U(pi, 0)
//   fourth quarter: the composite of the two (one closed-form map).
// Whole periods multiply by the monodromy power in closed form.
#pragma once

#include <vector>

#include "rabiheun/floquet.hpp"
#include "rabiheun/types.hpp"

namespace rabiheun {

// State plus series bookkeeping (same pattern as SeriesEval).
struct StateEval {
    SpinorState psi;
    int terms_used = 0;
    bool converged = true;
};

// psi(tau) for tau in [0, pi/2] with psi(0) = (1, 0):
//   psi1 = e^{ i f z} eta0(z, ( 1/2, 1/2)),
//   psi2 = -i nu e^{-i f z} sin(tau/2) conj(eta0(z, (-1/2, 1/2))),
// where z = sin^2(tau/2) and sin(tau/2) = sqrt(z) >= 0 on this range.
StateEval state_first_quarter(double tau, const PhysicalParams& p, const TruncationControl& ctrl);

// Gluing maps. Each takes the state at the mirror/shifted argument:
//   glue_second_quarter: psi(pi/2 - t) |-> psi(pi/2 + t)
//   glue_second_half:    psi(t)        |-> psi(pi + t)
//   glue_fourth_quarter: psi(pi/2 - t) |-> psi(3 pi/2 + t)
// The third is the exact composite of the first two.
SpinorState glue_second_quarter(const SpinorState& s, const MonodromyData& m);
SpinorState glue_second_half(const SpinorState& s, const MonodromyData& m);
SpinorState glue_fourth_quarter(const SpinorState& s, const MonodromyData& m);

// psi(tau) for arbitrary tau (m must belong to p). Dispatch on the reduced
// phase uses half-open quarters [0,pi/2], (pi/2,pi], (pi,3pi/2], (3pi/2,2pi),
// one series evaluation per call; whole periods apply monodromy_power.
StateEval state_any(const PhaseTime& t, const PhysicalParams& p, const MonodromyData& m,
                    const TruncationControl& ctrl);
StateEval state_any(double tau, const PhysicalParams& p, const MonodromyData& m,
                    const TruncationControl& ctrl);

// U(tau, 0); the constrained form is determined by its first column psi(tau).
EvolutionMatrix evolution_matrix(double tau, const PhysicalParams& p, const MonodromyData& m,
                                 const TruncationControl& ctrl);

struct TracePoint {
    double tau = 0.0;
    SpinorState psi;
    bool converged = true;
};

// Uniform tau grid over [0, 2 pi] with `samples` >= 2 points.
std::vector<TracePoint> trace(const PhysicalParams& p, const MonodromyData& m, int samples,
                              const TruncationControl& ctrl);

}  // namespace rabiheun
