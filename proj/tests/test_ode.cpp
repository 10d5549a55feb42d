#include <doctest.h>

#include <cmath>
#include <random>

#include "rabiheun/evolution.hpp"
#include "rabiheun/ode.hpp"

using namespace rabiheun;

namespace {
constexpr cplx iu{0.0, 1.0};
const IntegratorConfig cfg_default{};
const SpinorState e1{cplx{1.0, 0.0}, cplx{0.0, 0.0}};
}  // namespace

TEST_CASE("integrate") {
    SUBCASE("free precession closed form") {
        const SpinorState s = integrate({0.0, 1.0}, 0.0, 0.5 * pi, e1, cfg_default);
        CHECK(std::abs(s.psi1 - std::cos(pi / 4.0)) < 1e-10);
        CHECK(std::abs(s.psi2 - (-iu * std::sin(pi / 4.0))) < 1e-10);
    }
    SUBCASE("empty interval is the identity") {
        const SpinorState s0{cplx{0.6, 0.1}, cplx{-0.3, 0.2}};
        const SpinorState s = integrate({2.0, 3.0}, 1.3, 1.3, s0, cfg_default);
        CHECK(s.psi1 == s0.psi1);
        CHECK(s.psi2 == s0.psi2);
    }
    SUBCASE("matches the series state at the quarter period") {
        const PhysicalParams p{0.5, 1.0};
        const SpinorState s = integrate(p, 0.0, 0.5 * pi, e1, cfg_default);
        const SpinorState a = state_first_quarter(0.5 * pi, p, TruncationControl::trace_default()).psi;
        CHECK(std::abs(s.psi1 - a.psi1) < 1e-8);
        CHECK(std::abs(s.psi2 - a.psi2) < 1e-8);
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(integrate({1.0, 1.0}, 1.0, 0.5, e1, cfg_default), std::domain_error);
        CHECK_THROWS_AS(integrate({1.0, 1.0}, 0.0, 1.0, e1, IntegratorConfig{50}),
                        std::domain_error);
    }
}

TEST_CASE("numeric_monodromy") {
    SUBCASE("no dynamics gives the identity") {
        const Mat2 m = numeric_monodromy({0.0, 0.0}, cfg_default);
        CHECK(max_abs_diff(m, Mat2::identity()) < 1e-12);
    }
    SUBCASE("reference-point diagonal") {
        const Mat2 m = numeric_monodromy({0.5, 1.0}, cfg_default);
        CHECK(m(0, 0).real() == doctest::Approx(-0.708202).epsilon(1e-5));
        CHECK(std::abs(m(0, 0).imag()) < 1e-10);
        CHECK(std::abs(m(0, 0) - m(1, 1)) < 1e-10);
    }
    SUBCASE("unitarity drift stays below 1e-10 over one period") {
        for (const auto& p : {PhysicalParams{0.5, 1.0}, PhysicalParams{3.0, 2.0}}) {
            const Mat2 m = numeric_monodromy(p, cfg_default);
            CHECK(max_abs_diff(m * m.adjoint(), Mat2::identity()) < 1e-10);
        }
    }
    SUBCASE("squared row-swapped half-period propagator") {
        for (const auto& p : {PhysicalParams{0.5, 1.0}, PhysicalParams{1.5, 2.5}}) {
            const Mat2 half = numeric_propagator(p, 0.0, pi, cfg_default);
            const Mat2 t = Mat2::row_swap();
            CHECK(max_abs_diff((t * half) * (t * half), numeric_monodromy(p, cfg_default)) <
                  1e-8);
        }
    }
}

TEST_CASE("numeric_r_alpha") {
    SUBCASE("reference point reproduces the quoted digits") {
        const MonodromyData m = numeric_r_alpha({0.5, 1.0}, cfg_default);
        CHECK(m.r == doctest::Approx(-0.924176).epsilon(1e-5));
        CHECK(m.alpha == doctest::Approx(-1.75978).epsilon(1e-5));
    }
    SUBCASE("free precession nu=1/2") {
        const MonodromyData m = numeric_r_alpha({0.0, 0.5}, cfg_default);
        CHECK(m.r == doctest::Approx(-std::sqrt(2.0) / 2.0).epsilon(1e-10));
        CHECK(m.alpha == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("trivial case") {
        const MonodromyData m = numeric_r_alpha({0.0, 0.0}, cfg_default);
        CHECK(m.r == 0.0);
        CHECK(m.alpha == 0.0);
    }
}

TEST_CASE("numeric_quasienergy") {
    SUBCASE("free precession nu=1/2 gives 1/4") {
        CHECK(numeric_quasienergy({0.0, 0.5}, cfg_default).epsilon ==
              doctest::Approx(0.25).epsilon(1e-10));
    }
    SUBCASE("trivial case gives 0") {
        CHECK(numeric_quasienergy({0.0, 0.0}, cfg_default).epsilon == 0.0);
    }
    SUBCASE("series pipeline agreement at the reference point") {
        const PhysicalParams p{0.5, 1.0};
        const double eps_oracle = numeric_quasienergy(p, cfg_default).epsilon;
        const double eps100 =
            quasienergy(r_alpha(quarter_data(p, TruncationControl::quasienergy_default())))
                .epsilon;
        const double eps1000 =
            quasienergy(r_alpha(quarter_data(p, TruncationControl::trace_default()))).epsilon;
        CHECK(std::abs(eps100 - eps_oracle) < 1.3e-4);
        CHECK(std::abs(eps1000 - eps_oracle) < 1e-8);
        CHECK(eps_oracle == doctest::Approx(0.375247278168802).epsilon(1e-9));
    }
}

TEST_CASE("fourth-order convergence on step halving") {
    const PhysicalParams p{0.5, 1.0};
    const IntegratorConfig fine{51200};
    const SpinorState ref = integrate(p, 0.0, two_pi, e1, fine);
    double prev_err = 0.0;
    for (int i = 0; i < 2; ++i) {
        const int steps = 200 << i;
        const SpinorState s = integrate(p, 0.0, two_pi, e1, IntegratorConfig{steps});
        const double err =
            std::max(std::abs(s.psi1 - ref.psi1), std::abs(s.psi2 - ref.psi2));
        if (i > 0) CHECK(prev_err / err >= 12.0);
        prev_err = err;
    }
}

TEST_CASE("oracle symmetry identities at the reference point") {
    const PhysicalParams p{0.5, 1.0};
    const Mat2 t = Mat2::row_swap();
    const Mat2 u_half = numeric_propagator(p, 0.0, pi, cfg_default);
    const Mat2 u_quarter = numeric_propagator(p, 0.0, 0.5 * pi, cfg_default);

    SUBCASE("half-period off-diagonals purely imaginary and equal") {
        CHECK(std::abs(u_half(0, 1).real()) < 1e-8);
        CHECK(std::abs(u_half(0, 1) - u_half(1, 0)) < 1e-8);
    }
    SUBCASE("time translation by half a period conjugates by the row swap") {
        const double s = 0.9;
        const Mat2 lhs = numeric_propagator(p, pi, pi + s, cfg_default);
        const Mat2 rhs = (t * numeric_propagator(p, 0.0, s, cfg_default)) * t;
        CHECK(max_abs_diff(lhs, rhs) < 1e-8);
    }
    SUBCASE("quarter-period transpose relation") {
        CHECK(max_abs_diff(u_quarter, numeric_propagator(p, 0.5 * pi, pi, cfg_default).transpose()) <
              1e-8);
    }
    SUBCASE("reflected-quarter composition") {
        const double s = 0.4;
        const Mat2 lhs = numeric_propagator(p, 0.0, 0.5 * pi + s, cfg_default);
        const Mat2 rhs = numeric_propagator(p, 0.0, 0.5 * pi - s, cfg_default).conj() * u_half;
        CHECK(max_abs_diff(lhs, rhs) < 1e-8);
    }
}
