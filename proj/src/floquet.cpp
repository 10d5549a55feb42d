#include "rabiheun/floquet.hpp"

#include <algorithm>
#include <cmath>

namespace rabiheun {

namespace {
constexpr cplx iu{0.0, 1.0};
constexpr double r_clamp_tol = 1e-8;
constexpr double alpha_degenerate_tol = 1e-12;
}  // namespace

QuarterData quarter_data(const PhysicalParams& p, const TruncationControl& ctrl) {
    const EtaHalf eta = eta_at_half(p, ctrl);
    QuarterData q;
    q.a = std::exp(iu * (0.5 * p.f)) * eta.pp.value;
    q.b = -iu * p.nu * std::exp(-iu * (0.5 * p.f)) * (1.0 / std::sqrt(2.0)) *
          std::conj(eta.mp.value);
    q.terms_used = std::max(eta.pp.terms_used, eta.mp.terms_used);
    q.converged = eta.pp.converged && eta.mp.converged;
    return q;
}

MonodromyData r_alpha(const QuarterData& q) {
    MonodromyData m;
    double r = 2.0 * std::imag(std::conj(q.a) * q.b);
    if (std::abs(r) > 1.0 + r_clamp_tol)
        throw std::runtime_error("r_alpha: |r| exceeds 1 beyond roundoff; series data is broken");
    r = std::clamp(r, -1.0, 1.0);
    m.r = r;

    const cplx w = q.a * q.a + q.b * q.b;
    if (std::abs(w) < alpha_degenerate_tol) {
        // |r| = 1: the half-period propagator does not depend on alpha.
        m.alpha = 0.0;
        m.alpha_degenerate = true;
    } else {
        m.alpha = std::arg(w);
        m.alpha_degenerate = false;
    }
    return m;
}

Quasienergy quasienergy(const MonodromyData& m) {
    return {-std::asin(m.r) / pi};
}

std::pair<cplx, cplx> delta_eigenvalues(const MonodromyData& m) {
    const double s = std::sqrt(std::max(0.0, 1.0 - m.r * m.r));
    return {iu * m.r + s, iu * m.r - s};
}

EvolutionMatrix half_monodromy(const MonodromyData& m) {
    const double s = std::sqrt(std::max(0.0, 1.0 - m.r * m.r));
    // First column (psi1, psi2) = (s e^{i alpha}, i r).
    return {s * std::exp(iu * m.alpha), iu * m.r};
}

EvolutionMatrix full_monodromy(const MonodromyData& m) {
    const double s = std::sqrt(std::max(0.0, 1.0 - m.r * m.r));
    return {cplx{1.0 - 2.0 * m.r * m.r, 0.0},
            2.0 * iu * m.r * s * std::exp(iu * m.alpha)};
}

EvolutionMatrix monodromy_power(const MonodromyData& m, long long k) {
    const double theta = std::asin(m.r);
    const double ang = 2.0 * static_cast<double>(k) * theta;
    return {cplx{std::cos(ang), 0.0}, iu * std::sin(ang) * std::exp(iu * m.alpha)};
}

BranchFan branch_energies(const DimensionalParams& d, int n_min, int n_max,
                          const TruncationControl& ctrl) {
    if (n_min > n_max)
        throw std::domain_error("branch_energies: empty n range");
    const PhysicalParams p = d.reduced();
    const QuarterData q = quarter_data(p, ctrl);
    const MonodromyData m = r_alpha(q);
    const double eps = quasienergy(m).epsilon;

    BranchFan fan;
    fan.epsilon = eps;
    fan.converged = q.converged;
    fan.energies.reserve(2 * static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        for (int sign : {+1, -1}) {
            fan.energies.push_back(
                {n, sign, d.energy(sign * eps) + static_cast<double>(n) * d.omega});
        }
    }
    return fan;
}

}  // namespace rabiheun
