#include "cdirac/errors.hpp"
#include "cdirac/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cdirac;

TEST_CASE("finite interval rules on smooth integrands") {
    auto cubic = [](double x) { return x * x; };
    CHECK(quad::integrate(cubic, 0.0, 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto sine = [](double x) { return std::sin(x); };
    CHECK(quad::integrate(sine, 0.0, std::numbers::pi).value ==
          doctest::Approx(2.0).epsilon(1e-13));

    auto oscillatory = [](double x) { return std::cos(40.0 * x); };
    CHECK(quad::integrate(oscillatory, 0.0, 1.0).value ==
          doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-11));
}

TEST_CASE("empty interval integrates to zero") {
    auto f = [](double x) { return std::exp(x); };
    const auto res = quad::integrate(f, 2.0, 2.0);
    CHECK(res.value == 0.0);
    CHECK(res.converged);
}

TEST_CASE("real-line integrals with algebraic and exponential tails") {
    auto lorentzian = [](double x) { return 1.0 / (1.0 + x * x); };
    CHECK(quad::integrate_real_line(lorentzian).value ==
          doctest::Approx(std::numbers::pi).epsilon(1e-12));

    auto gaussian = [](double x) { return std::exp(-x * x); };
    CHECK(quad::integrate_real_line(gaussian).value ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));

    auto quartic = [](double x) { return 1.0 / (1.0 + x * x * x * x); };
    CHECK(quad::integrate_real_line(quartic).value ==
          doctest::Approx(std::numbers::pi / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("logarithmically divergent tail is rejected") {
    auto slow = [](double x) { return 1.0 / (1.0 + std::abs(x)); };
    CHECK_THROWS_AS(quad::integrate_real_line(slow), DivergenceError);
}

TEST_CASE("error estimate bounds the true error") {
    auto f = [](double x) { return std::exp(-x) * std::sin(3.0 * x); };
    const auto res = quad::integrate(f, 0.0, 5.0);
    // int_0^5 e^-x sin(3x) dx = [ -e^-x (sin 3x + 3 cos 3x) / 10 ]_0^5
    const double exact = (3.0 - std::exp(-5.0) * (std::sin(15.0) + 3.0 * std::cos(15.0))) / 10.0;
    CHECK(std::abs(res.value - exact) <= std::max(res.error_estimate, 1e-14));
}
