#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pvoigt/fit.hpp"

#include <cmath>

using namespace pvoigt;

TEST_CASE("expansion_objective reproduces the fixed two-term residual") {
    const auto fixed = default_coefficients<double>();
    const double linf = expansion_objective(fixed, 5.0, FitObjective::linf);
    // Grid max of |epsilon| on the 2001-point fit grid.
    CHECK(linf == doctest::Approx(0.031704412845371160).epsilon(1e-9));
    const double l2 = expansion_objective(fixed, 5.0, FitObjective::l2);
    CHECK(l2 == doctest::Approx(0.46489153917740306).epsilon(1e-9));
}

TEST_CASE("two-term linf fit beats the fixed coefficients") {
    const auto result = fit_expansion(2, 5.0, FitObjective::linf);
    REQUIRE(result.converged);
    const double fixed_linf =
        expansion_objective(default_coefficients<double>(), 5.0, FitObjective::linf);
    CHECK(result.objective_value <= fixed_linf);
    CHECK(result.objective_value > 0.0);
    // Cross-check the reported objective against an independent re-evaluation.
    CHECK(expansion_objective(result.expansion, 5.0, FitObjective::linf) ==
          doctest::Approx(result.objective_value).epsilon(1e-12));
}

TEST_CASE("single-term l2 fit returns one positive-rate pair") {
    const auto result = fit_expansion(1, 5.0, FitObjective::l2);
    REQUIRE(result.expansion.terms() == 1);
    CHECK(result.expansion.alpha()[0] == 1.0);
    CHECK(result.expansion.beta()[0] > 0.0);
}

TEST_CASE("starting at the fixed coefficients can only descend") {
    FitOptions<double> opt;
    opt.n_terms = 2;
    opt.t_max = 5.0;
    opt.objective = FitObjective::l2;
    opt.initial = default_coefficients<double>();
    const auto result = fit_expansion(opt);
    const double start_value =
        expansion_objective(default_coefficients<double>(), 5.0, FitObjective::l2);
    CHECK(result.objective_value <= start_value);
}

TEST_CASE("fits are deterministic") {
    const auto a = fit_expansion(2, 5.0, FitObjective::l2);
    const auto b = fit_expansion(2, 5.0, FitObjective::l2);
    REQUIRE(a.expansion.terms() == b.expansion.terms());
    for (Eigen::Index n = 0; n < a.expansion.terms(); ++n) {
        CHECK(a.expansion.alpha()[n] == b.expansion.alpha()[n]);
        CHECK(a.expansion.beta()[n] == b.expansion.beta()[n]);
    }
    CHECK(a.objective_value == b.objective_value);
}

TEST_CASE("invalid options are rejected") {
    CHECK_THROWS_AS(fit_expansion(0, 5.0, FitObjective::l2), std::invalid_argument);
    CHECK_THROWS_AS(fit_expansion(2, 0.0, FitObjective::l2), std::invalid_argument);
    CHECK_THROWS_AS(fit_expansion(2, -1.0, FitObjective::linf), std::invalid_argument);
    FitOptions<double> opt;
    opt.n_terms = 3;
    opt.initial = default_coefficients<double>(); // two terms, not three
    CHECK_THROWS_AS(fit_expansion(opt), std::invalid_argument);
}

TEST_CASE("iteration cap reports best-so-far without converging") {
    FitOptions<double> opt;
    opt.n_terms = 2;
    opt.t_max = 5.0;
    opt.objective = FitObjective::l2;
    opt.initial = default_coefficients<double>();
    opt.max_iterations = 3;
    const auto result = fit_expansion(opt);
    CHECK_FALSE(result.converged);
    CHECK(std::isfinite(result.objective_value));
    CHECK(result.expansion.terms() == 2);
}
