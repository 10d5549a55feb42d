#include "rabiheun/ode.hpp"

#include <algorithm>
#include <cmath>

namespace rabiheun {

namespace {

constexpr cplx iu{0.0, 1.0};

struct Deriv {
    cplx d1, d2;
};

// psi' = -i H psi
inline Deriv rhs(double tau, cplx psi1, cplx psi2, double f, double nu) {
    const double fs = f * std::sin(tau);
    return {-0.5 * iu * (fs * psi1 + nu * psi2), -0.5 * iu * (nu * psi1 - fs * psi2)};
}

void check_cfg(const IntegratorConfig& cfg) {
    if (cfg.steps_per_period < 100)
        throw std::domain_error("IntegratorConfig: steps_per_period must be >= 100");
}

}  // namespace

SpinorState integrate(const PhysicalParams& p, double tau0, double tau1,
                      const SpinorState& psi0, const IntegratorConfig& cfg) {
    validate(p);
    check_cfg(cfg);
    if (!(tau1 >= tau0))
        throw std::domain_error("integrate: tau1 must be >= tau0");
    if (tau1 == tau0) return psi0;

    const double len = tau1 - tau0;
    const auto n = std::max<long long>(
        1, std::llround(static_cast<double>(cfg.steps_per_period) * len / two_pi));
    const double h = len / static_cast<double>(n);

    cplx y1 = psi0.psi1, y2 = psi0.psi2;
    for (long long i = 0; i < n; ++i) {
        const double t = tau0 + h * static_cast<double>(i);
        const Deriv k1 = rhs(t, y1, y2, p.f, p.nu);
        const Deriv k2 = rhs(t + 0.5 * h, y1 + 0.5 * h * k1.d1, y2 + 0.5 * h * k1.d2, p.f, p.nu);
        const Deriv k3 = rhs(t + 0.5 * h, y1 + 0.5 * h * k2.d1, y2 + 0.5 * h * k2.d2, p.f, p.nu);
        const Deriv k4 = rhs(t + h, y1 + h * k3.d1, y2 + h * k3.d2, p.f, p.nu);
        y1 += (h / 6.0) * (k1.d1 + 2.0 * k2.d1 + 2.0 * k3.d1 + k4.d1);
        y2 += (h / 6.0) * (k1.d2 + 2.0 * k2.d2 + 2.0 * k3.d2 + k4.d2);
    }
    return {y1, y2};
}

Mat2 numeric_propagator(const PhysicalParams& p, double tau0, double tau1,
                        const IntegratorConfig& cfg) {
    const SpinorState c1 = integrate(p, tau0, tau1, {cplx{1.0, 0.0}, cplx{0.0, 0.0}}, cfg);
    const SpinorState c2 = integrate(p, tau0, tau1, {cplx{0.0, 0.0}, cplx{1.0, 0.0}}, cfg);
    return Mat2::from_columns(c1, c2);
}

Mat2 numeric_monodromy(const PhysicalParams& p, const IntegratorConfig& cfg) {
    return numeric_propagator(p, 0.0, two_pi, cfg);
}

MonodromyData numeric_r_alpha(const PhysicalParams& p, const IntegratorConfig& cfg) {
    const SpinorState q =
        integrate(p, 0.0, 0.5 * pi, {cplx{1.0, 0.0}, cplx{0.0, 0.0}}, cfg);
    QuarterData qd;
    qd.a = q.psi1;
    qd.b = q.psi2;
    qd.converged = true;
    return r_alpha(qd);
}

Quasienergy numeric_quasienergy(const PhysicalParams& p, const IntegratorConfig& cfg) {
    const Mat2 mono = numeric_monodromy(p, cfg);
    // trace = 2 cos(2 pi eps); imaginary part is pure integration noise
    const double c = std::clamp(0.5 * mono.trace().real(), -1.0, 1.0);
    const double magnitude = std::acos(c) / two_pi;
    const MonodromyData md = numeric_r_alpha(p, cfg);
    return {md.r > 0.0 ? -magnitude : magnitude};
}

}  // namespace rabiheun
