#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pvoigt/kernel_expansion.hpp"
#include "pvoigt/pseudo_voigt.hpp"
#include "pvoigt/quadrature.hpp"

#include "testing_oracles.hpp"

#include <cmath>
#include <numbers>

using namespace pvoigt;

TEST_CASE("origin value is 5 / (gamma sqrt(pi))") {
    const double k = voigt_k_approx<double>({0.0, 0.0});
    CHECK(k == doctest::Approx(1.0257992428141023).epsilon(1e-15));
    CHECK(k == doctest::Approx(5.0 / (2.75 * std::sqrt(std::numbers::pi))).epsilon(1e-15));
    const auto pair = faddeeva_approx<double>({0.0, 0.0});
    CHECK(pair.re == k);
    CHECK(pair.im == 0.0);
}

TEST_CASE("L vanishes identically on the imaginary axis") {
    for (double y : {0.0, 0.3, 1.0, 7.5})
        CHECK(voigt_l_approx<double>({0.0, y}) == 0.0);
}

TEST_CASE("pinned spot values") {
    CHECK(voigt_l_approx<double>({1.0, 0.0}) ==
          doctest::Approx(0.57652147860655223).epsilon(1e-15));
    const auto v = faddeeva_approx<double>({2.0, 1.0});
    CHECK(v.re == doctest::Approx(0.14452055743035686).epsilon(1e-14));
    CHECK(v.im == doctest::Approx(0.22105906014503795).epsilon(1e-14));
    CHECK(v.re > 0.0);
}

TEST_CASE("parity is exact in floating point") {
    testing_oracles::UniformStream rng(31337);
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.next(-10.0, 10.0);
        const double y = rng.next(0.0, 2.0);
        CHECK(voigt_k_approx<double>({x, y}) == voigt_k_approx<double>({-x, y}));
        CHECK(voigt_l_approx<double>({x, y}) == -voigt_l_approx<double>({-x, y}));
    }
}

TEST_CASE("component calls match the pair to the last bit") {
    testing_oracles::UniformStream rng(9);
    for (int i = 0; i < 200; ++i) {
        const ComplexArgument<double> arg{rng.next(-8.0, 8.0), rng.next(0.0, 3.0)};
        const auto pair = faddeeva_approx(arg);
        CHECK(pair.re == voigt_k_approx(arg));
        CHECK(pair.im == voigt_l_approx(arg));
    }
}

TEST_CASE("decay at large x") {
    // K falls off like 1/x^2; L only like 1/(sqrt(pi) x), so its tail is
    // checked against that asymptote rather than against the K threshold.
    for (double y : {0.0, 1.0}) {
        const double k = voigt_k_approx<double>({1e4, y});
        const double l = voigt_l_approx<double>({1e4, y});
        CHECK(std::abs(k) < 1e-6);
        CHECK(std::abs(l) < 1e-4);
        CHECK(std::abs(std::sqrt(std::numbers::pi) * 1e4 * l - 1.0) < 1e-3);
    }
    CHECK(std::abs(voigt_k_approx<double>({1e4, 1.0})) < 1e-7);
    CHECK(voigt_k_approx<double>({1e4, 1.0}) ==
          doctest::Approx(5.6418954857242700e-9).epsilon(1e-13));
    CHECK(voigt_l_approx<double>({1e4, 1.0}) ==
          doctest::Approx(5.6418957790586330e-5).epsilon(1e-13));
}

TEST_CASE("domain violations are rejected") {
    CHECK_THROWS_AS(voigt_k_approx<double>({0.0, -0.1}), std::domain_error);
    CHECK_THROWS_AS(voigt_l_approx<double>({std::nan(""), 0.0}), std::domain_error);
    CHECK_THROWS_AS(faddeeva_approx<double>({0.0, std::numeric_limits<double>::infinity()}),
                    std::domain_error);
    CHECK_THROWS_AS(faddeeva_approx<double>({1.0, 1.0}, PseudoVoigtParams<double>{0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(faddeeva_approx<double>({1.0, 1.0}, PseudoVoigtParams<double>{-2.0}),
                    std::domain_error);
}

TEST_CASE("first rational term is positive everywhere") {
    testing_oracles::UniformStream rng(4242);
    for (int i = 0; i < 500; ++i) {
        const double x = rng.next(-20.0, 20.0);
        const double y = rng.next(0.0, 5.0);
        const double g = 2.75;
        CHECK((y + g) / (x * x + (y + g) * (y + g)) > 0.0);
    }
}

TEST_CASE("closed forms agree with quadrature of the half-line kernel") {
    // Integrating the approximate kernel against e^(-yt)cos(xt) / sin(xt)
    // must land on the rational expressions; this checks the algebra that
    // produced them, independently of the reference oracle.
    constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi_v<double>;
    const double gamma = 2.75;
    const struct {
        double x, y;
    } points[] = {{0.0, 0.0}, {1.0, 0.5}, {3.0, 1.0}, {7.0, 0.2}};
    for (const auto& pt : points) {
        auto cos_integrand = [&](double t) {
            return inv_sqrt_pi * half_kernel_approx(t, gamma) * std::exp(-pt.y * t) *
                   std::cos(pt.x * t);
        };
        auto sin_integrand = [&](double t) {
            return inv_sqrt_pi * half_kernel_approx(t, gamma) * std::exp(-pt.y * t) *
                   std::sin(pt.x * t);
        };
        const auto k = integrate_adaptive(cos_integrand, 0.0, 60.0, 1e-10, 2000);
        const auto l = integrate_adaptive(sin_integrand, 0.0, 60.0, 1e-10, 2000);
        REQUIRE(k.converged);
        REQUIRE(l.converged);
        CHECK(std::abs(k.value - voigt_k_approx<double>({pt.x, pt.y})) < 1e-6);
        CHECK(std::abs(l.value - voigt_l_approx<double>({pt.x, pt.y})) < 1e-6);
    }
}
