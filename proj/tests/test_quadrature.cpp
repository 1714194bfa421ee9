#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "metasir/quadrature.hpp"

using namespace metasir;

TEST_CASE("polynomials are integrated exactly")
{
    const std::array<double, 2> b{0.0, 1.0};
    const auto r = quad::gauss_kronrod([](double x) { return x * x; }, b, 1e-14);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("oscillatory integrand over many breakpoints")
{
    // Si(10 pi).
    std::array<double, 11> b{};
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = std::numbers::pi * static_cast<double>(i);
    const auto r = quad::gauss_kronrod([](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, b, 1e-13);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.53902907957756446035).epsilon(1e-13));
}

TEST_CASE("adaptive refinement near a sharp feature")
{
    const std::array<double, 2> b{0.0, 60.0};
    const auto r = quad::gauss_kronrod([](double x) { return std::exp(-x) * std::cos(10.0 * x); }, b, 1e-13);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / 101.0).epsilon(1e-10));
    CHECK(r.intervals > 1);
}

TEST_CASE("interval budget exhaustion is reported")
{
    const std::array<double, 2> b{0.0, 1.0};
    const auto r = quad::gauss_kronrod([](double x) { return std::sin(1.0 / (x + 1e-6)); }, b, 1e-15, 5);
    CHECK_FALSE(r.converged);
}
