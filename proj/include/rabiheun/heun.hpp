// Local power-series solutions of the confluent Heun equation that the
// driven two-level system maps onto under z = sin^2(tau/2).
//
// The series about z = 0,
//     eta0(z, mu) = sum_k tau_k(mu) z^k,   tau_0 = 1,  radius of convergence 1,
// is needed for exactly two exponent pairs, mu = (1/2, 1/2) and
// mu = (-1/2, 1/2); its coefficients satisfy three-term recurrences in k.
// The values at z = 1/2 (quarter period) feed the Floquet reduction.
#pragma once

#include "rabiheun/types.hpp"

namespace rabiheun {

// The two admissible exponent pairs (mu0, mu1).
enum class MuPair {
    half_half,        // (1/2, 1/2)
    minus_half_half,  // (-1/2, 1/2)
};

double mu0_of(MuPair mu);
inline constexpr double mu1_of(MuPair) { return 0.5; }

// The five parameters of the confluent Heun equation in standard form.
struct HeunParams {
    double mu0 = 0.5;
    double mu1 = 0.5;
    cplx a{0.0, 0.0};
    cplx b0{0.0, 0.0};
    cplx b1{0.0, 0.0};
};

// Parameter map from the physical pair (f, nu):
//   a = 2 i f,  b0 = -(4 i f + 2 nu^2 + 1)/8,  b1 = i f,  mu0 = mu1 = 1/2.
HeunParams che_params(const PhysicalParams& p);

// One step of the three-term coefficient recurrence: given tau_k and
// tau_{k-1}, returns tau_{k+1}. Initial data is tau_{-1} = 0, tau_0 = 1.
// The denominators 2(k+1)(2k+1) and 2(k+1)(2k+3) never vanish for k >= 0.
cplx recurrence_step(MuPair mu, int k, cplx tau_k, cplx tau_km1, const PhysicalParams& p);

// Truncated series sum at z in [0, 1). Stops early once the tail rule of
// `ctrl` fires; otherwise returns converged = false after max_terms terms.
// eta0(0, mu) = 1 exactly, with terms_used = 1.
SeriesEval eta0(double z, MuPair mu, const PhysicalParams& p, const TruncationControl& ctrl);

// The two series values at the quarter-period point z = 1/2.
struct EtaHalf {
    SeriesEval pp;  // eta0(1/2, (1/2, 1/2))
    SeriesEval mp;  // eta0(1/2, (-1/2, 1/2))
};
EtaHalf eta_at_half(const PhysicalParams& p, const TruncationControl& ctrl);

}  // namespace rabiheun
