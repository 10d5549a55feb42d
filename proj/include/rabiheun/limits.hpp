// Small-Larmor-frequency limit machinery: Bessel J0 and Struve H0 by their
// ascending series, the half-range integral
//   I(f) = int_0^{1/2} e^{2 i f z} / sqrt((1-z) z) dz
//        = (pi/2) e^{i f} (J0(f) - i H0(f)),
// and the closed forms the z=1/2 series values collapse to at nu = 0:
//   eta_pp(f, 0) = e^{-i f},
//   eta_mp(f, 0) = (pi / (2 sqrt(2))) (J0(f) - i H0(f)),
// giving the small-nu quasienergy (1/pi) arcsin((pi/2) nu J0(f)).
// Ascending series only; arguments are guarded to |f| <= 30.
#pragma once

#include "rabiheun/types.hpp"

namespace rabiheun {

// Largest |f| accepted by the ascending-series evaluations.
inline constexpr double limits_f_max = 30.0;

double bessel_j0(double f);
double struve_h0(double f);

enum class IntegralMethod { series, quadrature };

// I(f) by the incomplete-Beta series or by quadrature after the
// singularity-removing substitution z = sin^2(theta/2).
cplx i_integral(double f, IntegralMethod method);

// eta_mp(f, 0) closed form.
cplx eta_mp_nu0(double f);
// eta_pp(f, 0) = e^{-i f}.
cplx eta_pp_nu0(double f);

// (1/pi) arcsin((pi/2) nu J0(f)); throws std::domain_error when the arcsin
// argument leaves [-1, 1] (nu too large for the limit formula).
double quasienergy_small_nu(double f, double nu);
// Leading form (nu/2) J0(f).
double quasienergy_small_nu_leading(double f, double nu);

// One row of the limit-identity comparison at a given f.
struct LimitCheckReport {
    double f = 0.0;
    cplx eta_mp_series{};     // from the nu=0 recurrence at z=1/2
    cplx eta_mp_closed{};     // eta_mp_nu0(f)
    cplx integral_quadrature{};
    cplx integral_closed{};   // (pi/2) e^{i f} (J0 - i H0)
    double max_abs_error = 0.0;
};

LimitCheckReport check_limit_identities(double f, const TruncationControl& ctrl);

}  // namespace rabiheun
