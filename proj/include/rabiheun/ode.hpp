// Brute-force validator: direct fixed-step integration of
//   i psi'(tau) = H(tau) psi(tau),   H = (1/2) [[f sin tau, nu], [nu, -f sin tau]],
// by the classical 4-stage Runge-Kutta scheme. Deterministic for a fixed
// step count; everything downstream (monodromy, r, alpha, quasienergy) is
// derived from integrated columns, independent of the series pipeline.
#pragma once

#include "rabiheun/floquet.hpp"
#include "rabiheun/types.hpp"

namespace rabiheun {

struct IntegratorConfig {
    int steps_per_period = 20000;  // at least 100
};

// Integrate psi0 from tau0 to tau1 (tau1 >= tau0). The step count scales
// with the interval length at the configured per-period density.
SpinorState integrate(const PhysicalParams& p, double tau0, double tau1,
                      const SpinorState& psi0, const IntegratorConfig& cfg);

// U(tau1, tau0) by integrating both canonical columns.
Mat2 numeric_propagator(const PhysicalParams& p, double tau0, double tau1,
                        const IntegratorConfig& cfg);

// U(2 pi, 0).
Mat2 numeric_monodromy(const PhysicalParams& p, const IntegratorConfig& cfg);

// (r, alpha) from the integrated quarter-period state, with the same
// extraction and clamping conventions as the series route.
MonodromyData numeric_r_alpha(const PhysicalParams& p, const IntegratorConfig& cfg);

// Principal quasienergy from the monodromy eigenphases: |eps| from the
// (real) trace via arccos, sign fixed by the quarter-period r so the branch
// convention matches the analytic pipeline.
Quasienergy numeric_quasienergy(const PhysicalParams& p, const IntegratorConfig& cfg);

}  // namespace rabiheun
