#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hpcart
{

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule
{
    std::vector<double> points;
    std::vector<double> weights;
};

// Legendre polynomials L_0..L_p and their derivatives at r, computed in
// one pass of the three-term recurrences.
std::pair<std::vector<double>, std::vector<double>> legendreValues(double r, std::size_t p);

// Integrated Legendre polynomials I_0..I_p (k = 0) or their first
// derivatives (k = 1). The linear modes are the nodal hat functions
// I_0 = (1 - r) / 2 and I_1 = (1 + r) / 2; higher modes are bubbles
// vanishing at both endpoints. Requires p >= 1 and k in {0, 1}.
std::vector<double> integratedLegendre(double r, std::size_t p, int k);

// n-point rule computed by Newton iteration on the Legendre roots from
// Chebyshev initial guesses; cached per n, safe for concurrent use.
const QuadratureRule& gaussLegendreRule(std::size_t n);

} // namespace hpcart
