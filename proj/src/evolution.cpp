#include "rabiheun/evolution.hpp"

#include <cmath>

namespace rabiheun {

namespace {

constexpr cplx iu{0.0, 1.0};

struct GlueCoeffs {
    double s;   // sqrt(1 - r^2)
    double c;   // cos(alpha)
    double sn;  // sin(alpha)
    double r;
};

GlueCoeffs coeffs(const MonodromyData& m) {
    return {std::sqrt(std::max(0.0, 1.0 - m.r * m.r)), std::cos(m.alpha), std::sin(m.alpha),
            m.r};
}

}  // namespace

StateEval state_first_quarter(double tau, const PhysicalParams& p,
                              const TruncationControl& ctrl) {
    validate(p);
    if (!(tau >= 0.0 && tau <= 0.5 * pi + 1e-12))
        throw std::domain_error("state_first_quarter: tau must lie in [0, pi/2]");

    const double half = 0.5 * tau;
    const double root_z = std::sin(half);
    const double z = root_z * root_z;

    const SeriesEval pp = eta0(z, MuPair::half_half, p, ctrl);
    const SeriesEval mp = eta0(z, MuPair::minus_half_half, p, ctrl);

    StateEval out;
    out.psi.psi1 = std::exp(iu * (p.f * z)) * pp.value;
    out.psi.psi2 = -iu * p.nu * std::exp(-iu * (p.f * z)) * root_z * std::conj(mp.value);
    out.terms_used = std::max(pp.terms_used, mp.terms_used);
    out.converged = pp.converged && mp.converged;
    return out;
}

SpinorState glue_second_quarter(const SpinorState& s, const MonodromyData& m) {
    const auto [sq, c, sn, r] = coeffs(m);
    const double u1 = s.u1(), v1 = s.v1(), u2 = s.u2(), v2 = s.v2();
    return {cplx{sq * (u1 * c + v1 * sn) + r * v2, sq * (u1 * sn - v1 * c) - r * u2},
            cplx{sq * (u2 * c + v2 * sn) - r * v1, sq * (u2 * sn - v2 * c) + r * u1}};
}

SpinorState glue_second_half(const SpinorState& s, const MonodromyData& m) {
    const auto [sq, c, sn, r] = coeffs(m);
    const double u1 = s.u1(), v1 = s.v1(), u2 = s.u2(), v2 = s.v2();
    return {cplx{sq * (u1 * c + v1 * sn) - r * v2, sq * (-v1 * c + u1 * sn) + r * u2},
            cplx{sq * (-u2 * c - v2 * sn) - r * v1, sq * (v2 * c - u2 * sn) + r * u1}};
}

SpinorState glue_fourth_quarter(const SpinorState& s, const MonodromyData& m) {
    const auto [sq, c, sn, r] = coeffs(m);
    const double u1 = s.u1(), v1 = s.v1(), u2 = s.u2(), v2 = s.v2();
    const double d = 1.0 - 2.0 * r * r;
    const double w = 2.0 * r * sq;
    return {cplx{d * u1 + w * (v2 * c - u2 * sn), d * v1 + w * (u2 * c + v2 * sn)},
            cplx{-d * u2 + w * (v1 * c - u1 * sn), -d * v2 + w * (u1 * c + v1 * sn)}};
}

StateEval state_any(const PhaseTime& t, const PhysicalParams& p, const MonodromyData& m,
                    const TruncationControl& ctrl) {
    const double tau = t.reduced;
    StateEval out;
    if (tau <= 0.5 * pi) {
        out = state_first_quarter(tau, p, ctrl);
    } else if (tau <= pi) {
        out = state_first_quarter(pi - tau, p, ctrl);
        out.psi = glue_second_quarter(out.psi, m);
    } else if (tau <= 1.5 * pi) {
        out = state_first_quarter(tau - pi, p, ctrl);
        out.psi = glue_second_half(out.psi, m);
    } else {
        out = state_first_quarter(two_pi - tau, p, ctrl);
        out.psi = glue_fourth_quarter(out.psi, m);
    }
    if (t.periods != 0) {
        // psi(tau + 2 pi k) = U(tau, 0) [U(2pi, 0)^k e1]
        const EvolutionMatrix u{out.psi};
        out.psi = u.apply(monodromy_power(m, t.periods).first_column());
    }
    return out;
}

StateEval state_any(double tau, const PhysicalParams& p, const MonodromyData& m,
                    const TruncationControl& ctrl) {
    return state_any(PhaseTime::from_tau(tau), p, m, ctrl);
}

EvolutionMatrix evolution_matrix(double tau, const PhysicalParams& p, const MonodromyData& m,
                                 const TruncationControl& ctrl) {
    return EvolutionMatrix{state_any(tau, p, m, ctrl).psi};
}

std::vector<TracePoint> trace(const PhysicalParams& p, const MonodromyData& m, int samples,
                              const TruncationControl& ctrl) {
    if (samples < 2)
        throw std::domain_error("trace: need at least 2 samples");
    std::vector<TracePoint> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double frac = static_cast<double>(j) / static_cast<double>(samples - 1);
        const double tau = two_pi * frac;
        const StateEval s = state_any(tau, p, m, ctrl);
        out.push_back({tau, s.psi, s.converged});
    }
    return out;
}

}  // namespace rabiheun
