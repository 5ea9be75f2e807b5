#include "hpcart/polynomials.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hpcart
{

std::pair<std::vector<double>, std::vector<double>> legendreValues(double r, std::size_t p)
{
    if(!std::isfinite(r))
        throw std::invalid_argument("legendreValues: non-finite coordinate");

    std::vector<double> L(p + 1), Ld(p + 1);

    L[0] = 1.0;
    Ld[0] = 0.0;

    if(p >= 1)
    {
        L[1] = r;
        Ld[1] = 1.0;
    }

    for(std::size_t q = 2; q <= p; ++q)
    {
        double a = (2.0 * q - 1.0) / q;
        double b = (q - 1.0) / q;

        L[q] = a * r * L[q - 1] - b * L[q - 2];
        Ld[q] = a * (L[q - 1] + r * Ld[q - 1]) - b * Ld[q - 2];
    }

    return { std::move(L), std::move(Ld) };
}

std::vector<double> integratedLegendre(double r, std::size_t p, int k)
{
    if(p < 1)
        throw std::invalid_argument("integratedLegendre: need p >= 1");
    if(k != 0 && k != 1)
        throw std::invalid_argument("integratedLegendre: diff order must be 0 or 1");

    auto [L, Ld] = legendreValues(r, p);

    std::vector<double> I(p + 1);

    if(k == 0)
    {
        I[0] = 0.5 * (1.0 - r);
        I[1] = 0.5 * (1.0 + r);

        for(std::size_t q = 2; q <= p; ++q)
            I[q] = (L[q] - L[q - 2]) / std::sqrt(4.0 * q - 2.0);
    }
    else
    {
        I[0] = -0.5;
        I[1] = 0.5;

        for(std::size_t q = 2; q <= p; ++q)
            I[q] = (Ld[q] - Ld[q - 2]) / std::sqrt(4.0 * q - 2.0);
    }

    return I;
}

namespace
{

QuadratureRule computeGaussLegendre(std::size_t n)
{
    QuadratureRule rule;
    rule.points.resize(n);
    rule.weights.resize(n);

    for(std::size_t i = 0; i < n; ++i)
    {
        // Chebyshev initial guess for the i-th root of L_n
        double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));

        for(int it = 0; it < 100; ++it)
        {
            auto [L, Ld] = legendreValues(x, n);
            double dx = L[n] / Ld[n];
            x -= dx;
            if(std::abs(dx) < 1e-15) break;
        }

        auto [L, Ld] = legendreValues(x, n);

        rule.points[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * Ld[n] * Ld[n]);
    }

    // Symmetrize pairs to cancel roundoff drift
    for(std::size_t i = 0; i < n / 2; ++i)
    {
        std::size_t j = n - 1 - i;
        double x = 0.5 * (rule.points[j] - rule.points[i]);
        double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.points[i] = -x;
        rule.points[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if(n % 2 == 1) rule.points[n / 2] = 0.0;

    return rule;
}

} // namespace

const QuadratureRule& gaussLegendreRule(std::size_t n)
{
    if(n < 1)
        throw std::invalid_argument("gaussLegendreRule: need n >= 1");

    static std::map<std::size_t, QuadratureRule> cache;
    static std::mutex mutex;

    std::lock_guard lock(mutex);

    auto it = cache.find(n);
    if(it == cache.end())
        it = cache.emplace(n, computeGaussLegendre(n)).first;

    return it->second;
}

} // namespace hpcart
