#include "rabiheun/heun.hpp"

namespace rabiheun {

namespace {
constexpr cplx iu{0.0, 1.0};
}

double mu0_of(MuPair mu) {
    return mu == MuPair::half_half ? 0.5 : -0.5;
}

HeunParams che_params(const PhysicalParams& p) {
    validate(p);
    HeunParams h;
    h.mu0 = 0.5;
    h.mu1 = 0.5;
    h.a = 2.0 * iu * p.f;
    h.b0 = -(4.0 * iu * p.f + 2.0 * p.nu * p.nu + 1.0) / 8.0;
    h.b1 = iu * p.f;
    return h;
}

cplx recurrence_step(MuPair mu, int k, cplx tau_k, cplx tau_km1, const PhysicalParams& p) {
    if (k < 0) throw std::domain_error("recurrence_step: k must be nonnegative");
    const double f = p.f;
    const double nu2 = p.nu * p.nu;
    const double kd = static_cast<double>(k);
    if (mu == MuPair::half_half) {
        const double den = 2.0 * (kd + 1.0) * (2.0 * kd + 1.0);
        return ((-4.0 * iu * f * (2.0 * kd + 1.0) + 4.0 * kd * kd - nu2) * tau_k +
                8.0 * iu * f * kd * tau_km1) /
               den;
    }
    const double den = 2.0 * (kd + 1.0) * (2.0 * kd + 3.0);
    return ((4.0 * (kd + 1.0) * (kd - 2.0 * iu * f) - nu2 + 1.0) * tau_k +
            4.0 * iu * f * (2.0 * kd + 1.0) * tau_km1) /
           den;
}

SeriesEval eta0(double z, MuPair mu, const PhysicalParams& p, const TruncationControl& ctrl) {
    validate(p);
    if (!(z >= 0.0 && z < 1.0))
        throw std::domain_error("eta0: z must lie in [0, 1)");
    if (ctrl.max_terms < 1)
        throw std::domain_error("eta0: max_terms must be at least 1");

    SeriesEval out;
    if (z == 0.0) {
        out.value = 1.0;
        out.terms_used = 1;
        out.last_term_magnitude = 1.0;
        out.converged = true;
        return out;
    }

    // Rolling coefficient pair only; coefficients can grow transiently
    // before the geometric tail sets in, hence the consecutive-term rule.
    cplx tau_km1{0.0, 0.0};
    cplx tau_k{1.0, 0.0};
    cplx sum{1.0, 0.0};
    double z_pow = 1.0;
    double last_mag = 1.0;
    int consecutive = 0;
    int used = 1;

    for (int k = 0; used < ctrl.max_terms; ++k) {
        const cplx tau_kp1 = recurrence_step(mu, k, tau_k, tau_km1, p);
        z_pow *= z;
        const cplx term = tau_kp1 * z_pow;
        sum += term;
        ++used;
        last_mag = std::abs(term);
        consecutive = (last_mag <= ctrl.tol * std::abs(sum)) ? consecutive + 1 : 0;
        tau_km1 = tau_k;
        tau_k = tau_kp1;
        if (consecutive >= ctrl.run_length) break;
    }

    out.value = sum;
    out.terms_used = used;
    out.last_term_magnitude = last_mag;
    out.converged = consecutive >= ctrl.run_length;
    return out;
}

EtaHalf eta_at_half(const PhysicalParams& p, const TruncationControl& ctrl) {
    return {eta0(0.5, MuPair::half_half, p, ctrl),
            eta0(0.5, MuPair::minus_half_half, p, ctrl)};
}

}  // namespace rabiheun
