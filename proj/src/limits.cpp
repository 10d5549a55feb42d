#include "rabiheun/limits.hpp"

#include <array>
#include <cmath>

#include "rabiheun/heun.hpp"

namespace rabiheun {

namespace {

constexpr cplx iu{0.0, 1.0};

void check_range(double f, const char* who) {
    if (!std::isfinite(f) || std::abs(f) > limits_f_max)
        throw std::domain_error(std::string(who) + ": |f| must be <= 30");
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; the rule
// is symmetric).
constexpr std::array<double, 8> gl_x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> gl_w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

double bessel_j0(double f) {
    check_range(f, "bessel_j0");
    const double q = 0.25 * f * f;  // (f/2)^2
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= -q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 3) break;
    }
    return sum;
}

double struve_h0(double f) {
    check_range(f, "struve_h0");
    const double q = 0.25 * f * f;
    double term = 2.0 * f / pi;  // (f/2) / Gamma(3/2)^2
    double sum = term;
    for (int k = 1; k <= 200; ++k) {
        const double half = static_cast<double>(k) + 0.5;
        term *= -q / (half * half);
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 3) break;
    }
    return sum;
}

cplx i_integral(double f, IntegralMethod method) {
    check_range(f, "i_integral");
    if (method == IntegralMethod::quadrature) {
        // z = sin^2(theta/2) removes both endpoint singularities:
        // I(f) = int_0^{pi/2} exp(2 i f sin^2(theta/2)) dtheta.
        // Composite 8x16 Gauss-Legendre resolves the <=5 oscillations at f=30.
        constexpr int panels = 8;
        const double width = 0.5 * pi / panels;
        cplx total{0.0, 0.0};
        for (int p = 0; p < panels; ++p) {
            const double mid = (static_cast<double>(p) + 0.5) * width;
            const double half = 0.5 * width;
            for (int i = 0; i < 8; ++i) {
                for (double sgn : {-1.0, 1.0}) {
                    const double theta = mid + sgn * half * gl_x[i];
                    const double s = std::sin(0.5 * theta);
                    total += half * gl_w[i] * std::exp(2.0 * iu * (f * s * s));
                }
            }
        }
        return total;
    }

    // Series over the incomplete-Beta moments B_n = int_0^{1/2} z^n / sqrt(z(1-z)) dz:
    //   B_0 = pi/2,  B_n = ((2n-1)/(2n)) B_{n-1} - (1/n) 2^{-n},
    // so I(f) = sum_n (2 i f)^n / n! * B_n.
    double beta = 0.5 * pi;
    cplx coef{1.0, 0.0};
    cplx sum = coef * beta;
    double pow_half = 1.0;
    int consecutive = 0;
    for (int n = 1; n <= 300; ++n) {
        const double nd = static_cast<double>(n);
        pow_half *= 0.5;
        beta = (2.0 * nd - 1.0) / (2.0 * nd) * beta - pow_half / nd;
        coef *= 2.0 * iu * f / nd;
        const cplx term = coef * beta;
        sum += term;
        consecutive = (std::abs(term) <= 1e-16 * std::abs(sum)) ? consecutive + 1 : 0;
        if (consecutive >= 3) return sum;
    }
    throw std::runtime_error("i_integral: series failed to converge");
}

cplx eta_mp_nu0(double f) {
    check_range(f, "eta_mp_nu0");
    return pi / (2.0 * std::sqrt(2.0)) * (bessel_j0(f) - iu * struve_h0(f));
}

cplx eta_pp_nu0(double f) {
    check_range(f, "eta_pp_nu0");
    return std::exp(-iu * f);
}

double quasienergy_small_nu(double f, double nu) {
    const double x = 0.5 * pi * nu * bessel_j0(f);
    if (std::abs(x) > 1.0)
        throw std::domain_error("quasienergy_small_nu: nu too large for the limit formula");
    return std::asin(x) / pi;
}

double quasienergy_small_nu_leading(double f, double nu) {
    return 0.5 * nu * bessel_j0(f);
}

LimitCheckReport check_limit_identities(double f, const TruncationControl& ctrl) {
    LimitCheckReport rep;
    rep.f = f;
    rep.eta_mp_series = eta0(0.5, MuPair::minus_half_half, {f, 0.0}, ctrl).value;
    rep.eta_mp_closed = eta_mp_nu0(f);
    rep.integral_quadrature = i_integral(f, IntegralMethod::quadrature);
    rep.integral_closed =
        0.5 * pi * std::exp(iu * f) * (bessel_j0(f) - iu * struve_h0(f));
    const double e1 = std::abs(rep.eta_mp_series - rep.eta_mp_closed);
    const double e2 = std::abs(rep.integral_quadrature - rep.integral_closed);
    const double e3 = std::abs(i_integral(f, IntegralMethod::series) - rep.integral_closed);
    rep.max_abs_error = std::max({e1, e2, e3});
    return rep;
}

}  // namespace rabiheun
