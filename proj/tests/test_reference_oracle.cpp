#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pvoigt/reference.hpp"

#include "testing_oracles.hpp"

#include <cmath>

using namespace pvoigt;

TEST_CASE("independent erfcx oracle is self-consistent") {
    // Frozen high-precision values guard the series and the continued
    // fraction branch alike.
    CHECK(testing_oracles::k_axis_closed_form(2.0) ==
          doctest::Approx(0.25539567631050574).epsilon(1e-14));
    CHECK(testing_oracles::k_axis_closed_form(0.0) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK(testing_oracles::k_axis_closed_form(4.0) ==
          doctest::Approx(0.13699945762506139).epsilon(1e-14));
    CHECK(testing_oracles::k_axis_closed_form(10.0) ==
          doctest::Approx(0.056140992743822586).epsilon(1e-14));
}

TEST_CASE("unit value at the origin") {
    CHECK(k_reference<double>({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("L integrand vanishes identically at x = 0") {
    for (double y : {0.0, 0.5, 1.0, 5.0})
        CHECK(l_reference<double>({0.0, y}) == 0.0);
}

TEST_CASE("x = 0 axis matches the closed form e^(y^2) erfc(y)") {
    QuadratureConfig<double> cfg;
    for (double y : {0.1, 0.5, 1.0, 2.0}) {
        const double expected = testing_oracles::k_axis_closed_form(y);
        CHECK(k_reference<double>({0.0, y}, cfg) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("parity within twice the tolerance") {
    QuadratureConfig<double> cfg;
    const double tol = 2.0 * cfg.abs_tol;
    for (double x : {0.7, 2.3, 6.0, 10.0}) {
        for (double y : {0.0, 0.4, 1.0}) {
            CHECK(std::abs(k_reference<double>({x, y}, cfg) - k_reference<double>({-x, y}, cfg)) <=
                  tol);
            CHECK(std::abs(l_reference<double>({x, y}, cfg) + l_reference<double>({-x, y}, cfg)) <=
                  tol);
        }
    }
}

TEST_CASE("damping factor makes the x = 0 values strictly decreasing in y") {
    double prev = std::numeric_limits<double>::infinity();
    for (double y : {0.0, 0.1, 0.5, 1.0}) {
        const double v = k_reference<double>({0.0, y});
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("adaptive and fixed-panel rules agree to 1e-10 on a spot grid") {
    QuadratureConfig<double> cfg;
    const double xs[] = {0.0, 1.0, 3.0, 5.0, 10.0};
    const double ys[] = {0.0, 0.1, 0.5, 1.0, 2.0};
    for (double x : xs) {
        for (double y : ys) {
            const ComplexArgument<double> arg{x, y};
            CHECK(std::abs(k_reference(arg, cfg) - k_reference_fixed(arg)) < 1e-10);
            CHECK(std::abs(l_reference(arg, cfg) - l_reference_fixed(arg)) < 1e-10);
        }
    }
}

TEST_CASE("oscillatory worst case stays within tolerance") {
    QuadratureConfig<double> cfg;
    const auto k = k_reference_detail<double>({10.0, 0.0}, cfg);
    const auto l = l_reference_detail<double>({10.0, 0.0}, cfg);
    REQUIRE(k.converged);
    REQUIRE(l.converged);
    CHECK(k.error_estimate <= cfg.abs_tol);
    CHECK(l.error_estimate <= cfg.abs_tol);
    // ~18 oscillation periods carry the bulk of the integral; a rule that
    // under-resolved them could not match the independent fixed-panel value.
    CHECK(std::abs(k.value - k_reference_fixed<double>({10.0, 0.0})) < 1e-10);
    CHECK(std::abs(l.value - l_reference_fixed<double>({10.0, 0.0})) < 1e-10);
}

TEST_CASE("w_reference basics") {
    const auto origin = w_reference<double>({0.0, 0.0});
    CHECK(origin.re == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(origin.im == 0.0);

    const auto a = w_reference<double>({2.0, 0.5});
    const auto b = w_reference<double>({2.0, 0.5});
    CHECK(a.re == b.re); // deterministic to the last bit
    CHECK(a.im == b.im);

    const auto far = w_reference<double>({5.0, 0.0});
    CHECK(std::abs(far.re) < 0.5);
    CHECK(std::abs(far.im) < 0.5);
    CHECK(far.im == doctest::Approx(0.11524596183093659).epsilon(1e-8));
}

TEST_CASE("tight tolerance resolves the tiny K value at (5, 0)") {
    QuadratureConfig<double> cfg;
    cfg.abs_tol = 1e-13;
    CHECK(std::abs(k_reference<double>({5.0, 0.0}, cfg) - 1.3887943864964021e-11) < 1e-12);
}

TEST_CASE("starving the subdivision budget raises a descriptive failure") {
    QuadratureConfig<double> cfg;
    cfg.max_subdivisions = 1;
    try {
        k_reference<double>({10.0, 0.0}, cfg);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.achieved_error() > cfg.abs_tol);
        CHECK(std::isfinite(e.best_estimate()));
    }
}

TEST_CASE("domain and configuration violations are rejected") {
    CHECK_THROWS_AS(k_reference<double>({0.0, -1.0}), std::domain_error);
    CHECK_THROWS_AS(l_reference<double>({std::nan(""), 0.0}), std::domain_error);
    QuadratureConfig<double> bad;
    bad.t_upper = 30.0;
    CHECK_THROWS_AS(k_reference<double>({0.0, 0.0}, bad), std::invalid_argument);
    bad = {};
    bad.abs_tol = 1e-8;
    CHECK_THROWS_AS(k_reference<double>({0.0, 0.0}, bad), std::invalid_argument);
    bad = {};
    bad.max_subdivisions = 0;
    CHECK_THROWS_AS(k_reference<double>({0.0, 0.0}, bad), std::invalid_argument);
}
