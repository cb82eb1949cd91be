// test_bath.cpp - spectral densities, correlation function and Bessel expansion

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "hseom/bath.hpp"

using namespace hseom;

namespace {

double max_relative_deviation(const BathSpec& spec, const BathExpansion& exp, double horizon, int points = 81)
{
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < points; ++i) scale = std::max(scale, std::abs(alpha_quadrature(spec, horizon * i / (points - 1))));
    for (int i = 0; i < points; ++i) {
        const double t = horizon * i / (points - 1);
        worst = std::max(worst, std::abs(alpha_reconstruct(exp, t) - alpha_quadrature(spec, t)) / scale);
    }
    return worst;
}

} // namespace

TEST_CASE("spectral density formulas")
{
    CHECK(evaluate_density(OhmicCircular{0.35, 6.0}, 6.0) == 0.0);
    CHECK(evaluate_density(OhmicCircular{0.35, 6.0}, 7.0) == 0.0);
    CHECK(evaluate_density(OhmicExponential{0.4, 6.0}, 0.0) == 0.0);
    CHECK(evaluate_density(OhmicCircular{1.0, 2.0}, 1.0) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK(evaluate_density(OhmicExponential{0.5, 2.0}, 2.0) == doctest::Approx(0.5 * 2.0 * std::exp(-1.0)));
    CHECK(density_slope_at_origin(OhmicCircular{0.35, 6.0}) == doctest::Approx(0.35));
    CHECK(density_slope_at_origin(OhmicExponential{0.4, 6.0}) == doctest::Approx(0.4));
}

TEST_CASE("bath spec validation")
{
    CHECK_THROWS_AS(validate(BathSpec{OhmicCircular{0.35, 6.0}, InverseTemperature::finite(3.0), 5.0, 20}), ConfigError);
    CHECK_THROWS_AS(validate(BathSpec{OhmicExponential{0.4, 6.0}, InverseTemperature::finite(3.0), 6.0, 20}), ConfigError);
    CHECK_NOTHROW(validate(BathSpec{OhmicExponential{0.4, 6.0}, InverseTemperature::finite(3.0), 20.0, 20}));
    CHECK_THROWS(InverseTemperature::infinite().value());
    CHECK(InverseTemperature::finite(3.0).value() == 3.0);
}

TEST_CASE("bessel ladder against boost")
{
    for (double x : {0.0, 0.3, 5.0, 12.0, 29.5, -4.0}) {
        const Eigen::VectorXd j = bessel_ladder(x, 40);
        for (int k = 0; k < 40; ++k) CHECK(j(k) == doctest::Approx(boost::math::cyl_bessel_j(k, x)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("derivative matrix pattern")
{
    const double Om = 6.0;
    for (int K : {2, 3, 7}) {
        const Eigen::MatrixXd eta(bessel_derivative_matrix(K, Om));
        for (int k = 0; k < K; ++k)
            for (int kp = 0; kp < K; ++kp) {
                double expected = 0.0;
                if (k == 0 && kp == 1) expected = -Om;
                if (k >= 1 && kp == k - 1) expected = Om / 2;
                if (k >= 1 && k <= K - 2 && kp == k + 1) expected = -Om / 2;
                CHECK(eta(k, kp) == expected);
            }
    }
    // The closure is exact for the Bessel functions themselves (away from the truncation edge).
    const Eigen::MatrixXd eta(bessel_derivative_matrix(30, Om));
    const double t = 0.4, h = 1e-5;
    const Eigen::VectorXd d = (bessel_ladder(Om * (t + h), 30) - bessel_ladder(Om * (t - h), 30)) / (2 * h);
    const Eigen::VectorXd rhs = eta * bessel_ladder(Om * t, 30);
    CHECK((d - rhs).head(20).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("circular cutoff odd coefficients")
{
    for (double zeta : {0.01, 0.35}) {
        for (double nu : {3.0, 6.0}) {
            for (const auto beta : {InverseTemperature::finite(1.0), InverseTemperature::finite(3.0),
                                    InverseTemperature::infinite()}) {
                const BathExpansion exp = compute_coefficients({OhmicCircular{zeta, nu}, beta, nu, 12});
                const cplx expected(0.0, -std::numbers::pi * zeta * nu * nu / 8.0);
                CHECK(std::abs(exp.c(1) - expected) < 1e-10);
                CHECK(std::abs(exp.c(3) - expected) < 1e-10);
                for (int k = 5; k < 12; k += 2) CHECK(std::abs(exp.c(k)) < 1e-10);
            }
        }
    }
}

TEST_CASE("odd coefficients do not depend on temperature")
{
    const auto odd = [](double beta) {
        return compute_coefficients({OhmicExponential{0.4757, 6.0}, InverseTemperature::finite(beta), 20.0, 30});
    };
    const BathExpansion a = odd(1.0), b = odd(3.0), c = odd(30.0);
    for (int k = 1; k < 30; k += 2) {
        CHECK(std::abs(a.c(k) - b.c(k)) < 1e-10);
        CHECK(std::abs(a.c(k) - c.c(k)) < 1e-10);
    }
}

TEST_CASE("phi at zero and reconstruction at t = 0")
{
    const BathSpec spec{OhmicCircular{0.35, 6.0}, InverseTemperature::finite(3.0), 6.0, 20};
    const BathExpansion exp = compute_coefficients(spec);
    CHECK(exp.phi_at_zero(0) == 1.0);
    CHECK(exp.phi_at_zero.tail(19).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(alpha_reconstruct(exp, 0.0) - exp.c(0)) == 0.0);
    CHECK(std::abs(alpha_reconstruct(exp, 0.0) - alpha_quadrature(spec, 0.0)) < 1e-6 * std::abs(exp.c(0)));
    CHECK(exp.warnings.empty());

    const BathExpansion one = make_expansion(6.0, VectorXc::Constant(1, cplx(0.7, -0.2)));
    CHECK(std::abs(alpha_reconstruct(one, 0.9) - cplx(0.7, -0.2) * boost::math::cyl_bessel_j(0, 5.4)) < 1e-14);
}

TEST_CASE("circular correlation function closed forms")
{
    const double zeta = 0.35, nu = 6.0;
    // Imaginary part: -(pi zeta nu^2 / 8)(J1 + J3) with the exp(-i w t) convention.
    const BathSpec spec{OhmicCircular{zeta, nu}, InverseTemperature::finite(3.0), nu, 20};
    const double t = 0.7;
    const double im = -std::numbers::pi * zeta * nu * nu / 8.0 *
                      (boost::math::cyl_bessel_j(1, nu * t) + boost::math::cyl_bessel_j(3, nu * t));
    CHECK(alpha_quadrature(spec, t).imag() == doctest::Approx(im).epsilon(1e-6));

    // Im alpha carries no temperature dependence.
    const BathSpec cold{OhmicCircular{zeta, nu}, InverseTemperature::finite(30.0), nu, 20};
    CHECK(std::abs(alpha_quadrature(spec, 1.0).imag() - alpha_quadrature(cold, 1.0).imag()) < 1e-8);

    // High temperature: Re alpha -> (pi zeta nu / (2 beta)) (J0 + J2).
    const double beta = 1e-3;
    const BathSpec hot{OhmicCircular{zeta, nu}, InverseTemperature::finite(beta), nu, 20};
    const double re = std::numbers::pi * zeta * nu / (2 * beta) *
                      (boost::math::cyl_bessel_j(0, nu * 0.5) + boost::math::cyl_bessel_j(2, nu * 0.5));
    CHECK(alpha_quadrature(hot, 0.5).real() / re == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("expansion reproduces quadrature on the presets")
{
    const BathSpec expo{OhmicExponential{0.35, 6.0}, InverseTemperature::finite(3.0), 20.0, 80};
    CHECK(max_relative_deviation(expo, compute_coefficients(expo), 2.0) <= 1e-6);
    for (const auto beta : {InverseTemperature::finite(3.0), InverseTemperature::infinite()}) {
        const BathSpec circ{OhmicCircular{0.35, 6.0}, beta, 6.0, 20};
        CHECK(max_relative_deviation(circ, compute_coefficients(circ), 2.0) <= 1e-4);
    }
}

TEST_CASE("reconstruction error does not grow when K doubles")
{
    const auto err = [](int K) {
        const BathSpec spec{OhmicExponential{0.35, 6.0}, InverseTemperature::finite(3.0), 20.0, K};
        return max_relative_deviation(spec, compute_coefficients(spec), 2.0, 41);
    };
    const double e20 = err(20), e40 = err(40), e80 = err(80);
    CHECK(e40 <= e20);
    CHECK(e80 <= e40 + 1e-12);
}

TEST_CASE("truncated hierarchy sees the reconstructed correlation at short times")
{
    const BathSpec spec{OhmicCircular{0.35, 6.0}, InverseTemperature::finite(3.0), 6.0, 20};
    const BathExpansion exp = compute_coefficients(spec);
    for (double t : {0.0, 0.5, 1.0, 1.5})
        CHECK(std::abs(alpha_effective(exp, t) - alpha_reconstruct(exp, t)) < 1e-5 * std::abs(exp.c(0)));
}

TEST_CASE("jacobi-anger residual")
{
    CHECK(jacobi_anger_residual(0.3, 0.0, 1, 6.0) < 1e-15);
    CHECK(jacobi_anger_residual(1.0, 5.0 / 6.0, 20, 6.0) < 1e-10);
    CHECK(jacobi_anger_residual(0.5, 5.0, 20, 6.0) > 0.1);
    CHECK_THROWS(jacobi_anger_residual(1.5, 1.0, 20, 6.0));
    const int K = minimal_basis_size(6.0, 2.0, 1e-6);
    CHECK(jacobi_anger_residual(1.0, 2.0, K, 6.0) < 1e-6);
    CHECK(jacobi_anger_residual(1.0, 2.0, K - 2, 6.0) > 1e-6);
}

TEST_CASE("spectral tail fraction")
{
    CHECK(spectral_tail_fraction({OhmicCircular{0.35, 6.0}, InverseTemperature::finite(3.0), 6.0, 20}) == 0.0);
    // Zero temperature: int_Omega^inf w e^{-w/g} / int_0^inf = e^{-Omega/g} (1 + Omega/g).
    const double r = 20.0 / 6.0;
    const double zero_t = spectral_tail_fraction({OhmicExponential{0.35, 6.0}, InverseTemperature::infinite(), 20.0, 80});
    CHECK(zero_t == doctest::Approx(std::exp(-r) * (1.0 + r)).epsilon(1e-8));
    const double warm = spectral_tail_fraction({OhmicExponential{0.35, 6.0}, InverseTemperature::finite(3.0), 20.0, 80});
    CHECK(warm > 0.0);
    CHECK(warm < zero_t + 0.01);
    const double wide = spectral_tail_fraction({OhmicExponential{0.35, 6.0}, InverseTemperature::finite(3.0), 120.0, 80});
    CHECK(wide < 1e-6);
}

TEST_CASE("expansion file round trip")
{
    const BathSpec spec{OhmicCircular{0.35, 6.0}, InverseTemperature::infinite(), 6.0, 10};
    const BathExpansion exp = compute_coefficients(spec);
    std::stringstream ss;
    write_expansion(ss, spec, exp);
    const BathExpansion back = read_expansion(ss);
    CHECK(back.K == exp.K);
    CHECK(back.Omega == exp.Omega);
    CHECK((back.c - exp.c).cwiseAbs().maxCoeff() == 0.0);

    std::stringstream bad("# Omega = 6\n# K = 3\nk,re_c,im_c\n0,1,0\n");
    CHECK_THROWS(read_expansion(bad));
}
