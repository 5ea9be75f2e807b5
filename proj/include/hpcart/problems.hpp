#pragma once

#include "hpcart/assembly.hpp"

#include <functional>

namespace hpcart
{

using VectorField = std::function<void(std::span<const double>, std::span<double>)>;
using TimeScalarField = std::function<double(std::span<const double>, double)>;

enum class Grading
{
    Uniform,
    Linear
};

// Manufactured corner singularity on [0,1]^d: u = sqrt(|x|), with
// homogeneous Neumann conditions on the faces touching the coordinate
// planes and Dirichlet conditions elsewhere.
struct CornerFields
{
    ScalarField u;
    VectorField gradU;
    ScalarField f;
    std::vector<DomainFace> dirichletFaces;
    std::vector<DomainFace> neumannFaces;
};

CornerFields cornerFields(std::size_t dim);

// Heat conduction driven by a moving normalized Gaussian source on a box
// domain. The reference solution is the free-space convolution integral
// evaluated by composite Gauss-Legendre quadrature in time.
struct TransientProblem
{
    std::size_t dim = 2;
    std::vector<double> lo, hi;
    double endTime = 0.5;
    double capacity = 1.0;
    double conductivity = 1.0;
    double sigma = 0.05;
    std::function<double(double)> intensity; // I(t)
    std::function<void(double, std::span<double>)> path; // p(t)
    ScalarField initial; // u0
};

// Defaults: unit box, sigma = 0.05 * edge, kappa = c = 1, linear path
// across the top face, unit intensity after a smooth cubic ramp, u0 = 0.
TransientProblem defaultTransientProblem(std::size_t dim);

/// f(x, t) = I(t) q(x - p(t)) with q the normalized Gaussian of width sigma.
TimeScalarField movingSource(const TransientProblem& problem);

// u(x, t) = u0(x) + integral of I(tau) g(x - p(tau), t - tau) over
// [0, t], with g the heat kernel started from q. Integrated with 30
// Gauss-Legendre points per interval of length <= 1/100.
TimeScalarField referenceSolution(const TransientProblem& problem);

/// sqrt(sum over elements of int kappa |grad u_h - grad u|^2), (p+1)-point rules.
double energyErrorNorm(const Basis& basis,
                       std::span<const double> coefficients,
                       const VectorField& exactGradient,
                       double kappa = 1.0);

/// sqrt(int (u_h - u)^2), (p+1)-point rules per element.
double l2ErrorNorm(const Basis& basis,
                   std::span<const double> coefficients,
                   const ScalarField& exact);

} // namespace hpcart
