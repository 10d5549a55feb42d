// Core value types shared across the library: physical parameter pairs,
// truncation control for series evaluation, two-component spinor states and
// the SU(2)-constrained evolution matrices of a driven two-level system.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace rabiheun {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Scaled-frequency floor below which truncated series evaluation of the
// quasienergy degrades; used as the default grid filter and CLI guard.
inline constexpr double omega_floor = 3.0 / 128.0;

// Dimensionless parameter pair: f = F/omega (drive amplitude over drive
// frequency), nu = omega0/omega (Larmor over drive frequency).
struct PhysicalParams {
    double f = 0.0;
    double nu = 0.0;
};

// Throws std::domain_error unless both entries are finite and nonnegative.
// The spectrum depends on |f|, |nu| only; negative inputs are rejected
// rather than silently folded.
inline void validate(const PhysicalParams& p) {
    if (!std::isfinite(p.f) || !std::isfinite(p.nu))
        throw std::domain_error("PhysicalParams: f and nu must be finite");
    if (p.f < 0.0 || p.nu < 0.0)
        throw std::domain_error("PhysicalParams: f and nu must be nonnegative");
}

// Dimensionful description (hbar = 1): Larmor frequency omega0, drive
// frequency omega, drive amplitude F_amp. The whole pipeline consumes only
// the reduced pair, so energies are positively homogeneous of degree one.
struct DimensionalParams {
    double omega0 = 0.0;
    double omega = 0.0;
    double F_amp = 0.0;

    PhysicalParams reduced() const {
        if (!(omega > 0.0))
            throw std::domain_error("DimensionalParams: omega must be positive");
        return {F_amp / omega, omega0 / omega};
    }
    double period() const { return two_pi / omega; }
    // E = omega * eps for a dimensionless quasienergy eps.
    double energy(double eps) const { return omega * eps; }
};

// Stopping control for the z=0 power series: stop once |term| <=
// tol * |partial sum| holds for run_length consecutive terms, hard cap
// max_terms. 100 terms is the quasienergy default, 1000 the trace default.
struct TruncationControl {
    int max_terms = 100;
    double tol = 1e-14;
    int run_length = 5;

    static constexpr TruncationControl quasienergy_default() { return {100, 1e-14, 5}; }
    static constexpr TruncationControl trace_default() { return {1000, 1e-14, 5}; }
};

// One truncated series evaluation. `converged` means the tail rule fired
// before the term cap; callers decide what to do with a false flag.
struct SeriesEval {
    cplx value{0.0, 0.0};
    int terms_used = 0;
    double last_term_magnitude = 0.0;
    bool converged = false;
};

// Two-component state psi = (psi1, psi2), psik = uk + i vk.
struct SpinorState {
    cplx psi1{0.0, 0.0};
    cplx psi2{0.0, 0.0};

    double u1() const { return psi1.real(); }
    double v1() const { return psi1.imag(); }
    double u2() const { return psi2.real(); }
    double v2() const { return psi2.imag(); }
    double norm_sq() const { return std::norm(psi1) + std::norm(psi2); }
};

// Evolution matrix of a two-level system, constrained to the form
//   [ psi1  -conj(psi2) ]
//   [ psi2   conj(psi1) ]
// and therefore fully determined by its first column. Products of matrices
// of this form stay in the form.
class EvolutionMatrix {
public:
    EvolutionMatrix() : col_{cplx{1.0, 0.0}, cplx{0.0, 0.0}} {}
    explicit EvolutionMatrix(const SpinorState& first_column) : col_(first_column) {}
    EvolutionMatrix(cplx psi1, cplx psi2) : col_{psi1, psi2} {}

    static EvolutionMatrix identity() { return EvolutionMatrix{}; }

    cplx m11() const { return col_.psi1; }
    cplx m12() const { return -std::conj(col_.psi2); }
    cplx m21() const { return col_.psi2; }
    cplx m22() const { return std::conj(col_.psi1); }

    SpinorState first_column() const { return col_; }
    SpinorState second_column() const { return {m12(), m22()}; }

    SpinorState apply(const SpinorState& s) const {
        return {m11() * s.psi1 + m12() * s.psi2, m21() * s.psi1 + m22() * s.psi2};
    }

    EvolutionMatrix operator*(const EvolutionMatrix& rhs) const {
        return EvolutionMatrix{apply(rhs.first_column())};
    }

    // Conjugation by the row-swap matrix: T U T (swaps both indices).
    EvolutionMatrix swap_conjugate() const {
        return {std::conj(col_.psi1), -std::conj(col_.psi2)};
    }

private:
    SpinorState col_;
};

// General complex 2x2 matrix. The analytic pipeline never needs it; the ODE
// oracle and the symmetry checks do (e.g. T*U alone has determinant -1 and
// leaves the constrained form).
struct Mat2 {
    std::array<std::array<cplx, 2>, 2> m{};

    static Mat2 identity() {
        Mat2 r;
        r.m[0][0] = 1.0;
        r.m[1][1] = 1.0;
        return r;
    }
    static Mat2 row_swap() {
        Mat2 r;
        r.m[0][1] = 1.0;
        r.m[1][0] = 1.0;
        return r;
    }
    static Mat2 from_columns(const SpinorState& c1, const SpinorState& c2) {
        Mat2 r;
        r.m[0][0] = c1.psi1;
        r.m[1][0] = c1.psi2;
        r.m[0][1] = c2.psi1;
        r.m[1][1] = c2.psi2;
        return r;
    }

    cplx operator()(int i, int j) const { return m[i][j]; }

    Mat2 operator*(const Mat2& b) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * b.m[0][j] + m[i][1] * b.m[1][j];
        return r;
    }
    Mat2 adjoint() const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = std::conj(m[j][i]);
        return r;
    }
    Mat2 transpose() const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[j][i];
        return r;
    }
    Mat2 conj() const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = std::conj(m[i][j]);
        return r;
    }
    cplx trace() const { return m[0][0] + m[1][1]; }
};

inline Mat2 to_mat2(const EvolutionMatrix& u) {
    return Mat2::from_columns(u.first_column(), u.second_column());
}

// Entrywise max-abs distance, the metric used by all matrix comparisons.
inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    double w = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            w = std::max(w, std::abs(a.m[i][j] - b.m[i][j]));
    return w;
}

// A dimensionless time reduced modulo one period: tau = reduced + 2*pi*periods
// with reduced in [0, 2*pi).
struct PhaseTime {
    double reduced = 0.0;
    long long periods = 0;

    static PhaseTime from_tau(double tau) {
        if (!std::isfinite(tau))
            throw std::domain_error("PhaseTime: tau must be finite");
        double k = std::floor(tau / two_pi);
        double red = tau - two_pi * k;
        if (red >= two_pi) {  // floor rounding at the seam
            red -= two_pi;
            k += 1.0;
        }
        if (red < 0.0) red = 0.0;
        return {red, static_cast<long long>(k)};
    }

    double tau() const { return reduced + two_pi * static_cast<double>(periods); }
    // Half-period coordinate z = sin^2(tau/2), bijective on [0, pi].
    double z() const {
        const double s = std::sin(0.5 * reduced);
        return s * s;
    }
};

}  // namespace rabiheun
