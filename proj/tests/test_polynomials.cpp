#include "doctest.h"

#include "hpcart/polynomials.hpp"

#include <cmath>
#include <random>

using namespace hpcart;

TEST_CASE("legendre recurrence matches reference values")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    for(int trial = 0; trial < 200; ++trial)
    {
        double r = dist(rng);
        auto [L, dL] = legendreValues(r, 8);

        CHECK(L[0] == 1.0);
        CHECK(L[1] == r);
        CHECK(L[2] == doctest::Approx(0.5 * (3 * r * r - 1)).epsilon(1e-14));
        CHECK(L[3] == doctest::Approx(0.5 * (5 * r * r * r - 3 * r)).epsilon(1e-14));

        for(std::size_t q = 0; q <= 8; ++q)
            CHECK(L[q] == doctest::Approx(std::legendre(static_cast<unsigned>(q), r)).epsilon(1e-12));

        // (1 - r^2) L'_q = q (L_{q-1} - r L_q)
        for(std::size_t q = 1; q <= 8; ++q)
            CHECK((1 - r * r) * dL[q] ==
                  doctest::Approx(q * (L[q - 1] - r * L[q])).epsilon(1e-12));
    }
}

TEST_CASE("legendre endpoint values")
{
    auto [Lp, dLp] = legendreValues(1.0, 6);
    auto [Lm, dLm] = legendreValues(-1.0, 6);

    for(std::size_t q = 0; q <= 6; ++q)
    {
        CHECK(Lp[q] == doctest::Approx(1.0));
        CHECK(Lm[q] == doctest::Approx(q % 2 ? -1.0 : 1.0));
        // L'_q(1) = q (q + 1) / 2
        CHECK(dLp[q] == doctest::Approx(0.5 * q * (q + 1)));
    }
}

TEST_CASE("legendre rejects non-finite input")
{
    CHECK_THROWS(legendreValues(std::nan(""), 3));
    CHECK_THROWS(integratedLegendre(std::numeric_limits<double>::infinity(), 3, 0));
}

TEST_CASE("integrated legendre nodal modes and endpoints")
{
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    for(int trial = 0; trial < 200; ++trial)
    {
        double r = dist(rng);
        auto I = integratedLegendre(r, 10, 0);

        CHECK(I[0] == doctest::Approx(0.5 * (1 - r)).epsilon(1e-14));
        CHECK(I[1] == doctest::Approx(0.5 * (1 + r)).epsilon(1e-14));
        CHECK(I[0] + I[1] == doctest::Approx(1.0).epsilon(1e-14)); // partition of unity
    }

    for(double r : { -1.0, 1.0 })
    {
        auto I = integratedLegendre(r, 10, 0);
        for(std::size_t q = 2; q <= 10; ++q)
            CHECK(I[q] == doctest::Approx(0.0).epsilon(1e-14)); // bubbles vanish
    }
}

TEST_CASE("integrated legendre definition and derivative")
{
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    for(int trial = 0; trial < 100; ++trial)
    {
        double r = dist(rng);
        auto I = integratedLegendre(r, 10, 0);
        auto dI = integratedLegendre(r, 10, 1);
        auto [L, dL] = legendreValues(r, 10);

        for(std::size_t q = 2; q <= 10; ++q)
        {
            CHECK(I[q] == doctest::Approx((L[q] - L[q - 2]) / std::sqrt(4.0 * q - 2.0))
                              .epsilon(1e-13));
            // d/dr I_q = sqrt(4q - 2) / 2 * L_{q-1}
            CHECK(dI[q] == doctest::Approx(0.5 * std::sqrt(4.0 * q - 2.0) * L[q - 1])
                               .epsilon(1e-13));
        }

        CHECK(dI[0] == doctest::Approx(-0.5));
        CHECK(dI[1] == doctest::Approx(0.5));

        // finite-difference cross-check
        double h = 1e-6;
        if(std::abs(r) < 1.0 - 2 * h)
        {
            auto Ip = integratedLegendre(r + h, 10, 0);
            auto Im = integratedLegendre(r - h, 10, 0);
            for(std::size_t q = 0; q <= 10; ++q)
                CHECK(dI[q] == doctest::Approx((Ip[q] - Im[q]) / (2 * h)).epsilon(1e-6));
        }
    }
}

TEST_CASE("integrated legendre argument validation")
{
    CHECK_THROWS(integratedLegendre(0.0, 0, 0));
    CHECK_THROWS(integratedLegendre(0.0, 3, 2));
    CHECK_THROWS(integratedLegendre(0.0, 3, -1));
}

TEST_CASE("gauss rules: frozen low-order values")
{
    const auto& g2 = gaussLegendreRule(2);
    CHECK(g2.points[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.points[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    const auto& g3 = gaussLegendreRule(3);
    CHECK(g3.points[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g3.points[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(g3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
    CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));

    const auto& g1 = gaussLegendreRule(1);
    CHECK(g1.points[0] == doctest::Approx(0.0));
    CHECK(g1.weights[0] == doctest::Approx(2.0));
}

TEST_CASE("gauss rules integrate polynomials of degree 2n - 1 exactly")
{
    for(std::size_t n = 1; n <= 20; ++n)
    {
        const auto& rule = gaussLegendreRule(n);
        REQUIRE(rule.points.size() == n);

        double weightSum = 0.0;
        for(auto w : rule.weights) weightSum += w;
        CHECK(weightSum == doctest::Approx(2.0).epsilon(1e-14));

        for(std::size_t k = 0; k <= 2 * n - 1; ++k)
        {
            double integral = 0.0;
            for(std::size_t i = 0; i < n; ++i)
                integral += rule.weights[i] * std::pow(rule.points[i], static_cast<double>(k));

            double exact = (k % 2 == 0) ? 2.0 / static_cast<double>(k + 1) : 0.0;
            CHECK(integral == doctest::Approx(exact).epsilon(1e-12));
        }

        // symmetry
        for(std::size_t i = 0; i < n; ++i)
        {
            CHECK(rule.points[i] == doctest::Approx(-rule.points[n - 1 - i]).epsilon(1e-14));
            CHECK(rule.weights[i] == doctest::Approx(rule.weights[n - 1 - i]).epsilon(1e-14));
        }
    }
}
