#include "hpcart/problems.hpp"
#include "hpcart/polynomials.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hpcart
{

CornerFields cornerFields(std::size_t dim)
{
    if(dim < 1)
        throw std::invalid_argument("cornerFields: dimension must be at least 1");

    auto radius = [](std::span<const double> x)
    {
        double r2 = 0.0;
        for(auto v : x) r2 += v * v;
        return std::sqrt(r2);
    };

    CornerFields fields;

    fields.u = [radius](std::span<const double> x)
    {
        return std::sqrt(radius(x));
    };

    fields.gradU = [radius](std::span<const double> x, std::span<double> grad)
    {
        double r = radius(x);
        double scale = 0.5 / (r * std::sqrt(r));
        for(std::size_t a = 0; a < x.size(); ++a) grad[a] = scale * x[a];
    };

    double coefficient = (3.0 - 2.0 * static_cast<double>(dim)) / 4.0;
    fields.f = [radius, coefficient](std::span<const double> x)
    {
        double r = radius(x);
        return coefficient / (r * std::sqrt(r));
    };

    for(std::size_t a = 0; a < dim; ++a)
    {
        fields.neumannFaces.emplace_back(a, 0);
        fields.dirichletFaces.emplace_back(a, 1);
    }

    return fields;
}

TransientProblem defaultTransientProblem(std::size_t dim)
{
    if(dim < 1)
        throw std::invalid_argument("defaultTransientProblem: dimension must be at least 1");

    TransientProblem problem;
    problem.dim = dim;
    problem.lo.assign(dim, 0.0);
    problem.hi.assign(dim, 1.0);
    problem.sigma = 0.05;

    double ramp = 0.4 * problem.endTime;
    problem.intensity = [ramp](double t)
    {
        double s = std::clamp(t / ramp, 0.0, 1.0);
        return s * s * (3.0 - 2.0 * s);
    };

    double endTime = problem.endTime;
    problem.path = [dim, endTime](double t, std::span<double> p)
    {
        double s = std::clamp(t / endTime, 0.0, 1.0);
        p[0] = 0.25 + 0.5 * s;
        for(std::size_t a = 1; a < dim; ++a) p[a] = (a == dim - 1) ? 1.0 : 0.5;
        if(dim == 1) p[0] = 1.0; // degenerate: source sits on the top end
    };

    problem.initial = [](std::span<const double>) { return 0.0; };

    return problem;
}

namespace
{

double gaussian(std::span<const double> offset, double width, std::size_t dim)
{
    double r2 = 0.0;
    for(auto v : offset) r2 += v * v;

    double norm = std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(dim)) *
                  std::pow(width, static_cast<double>(dim));

    return std::exp(-0.5 * r2 / (width * width)) / norm;
}

} // namespace

TimeScalarField movingSource(const TransientProblem& problem)
{
    return [problem](std::span<const double> x, double t)
    {
        std::vector<double> offset(problem.dim);
        problem.path(t, offset);
        for(std::size_t a = 0; a < problem.dim; ++a) offset[a] = x[a] - offset[a];

        return problem.intensity(t) * gaussian(offset, problem.sigma, problem.dim);
    };
}

TimeScalarField referenceSolution(const TransientProblem& problem)
{
    return [problem](std::span<const double> x, double t)
    {
        double u = problem.initial ? problem.initial(x) : 0.0;

        if(t <= 0.0) return u;

        std::size_t intervals = static_cast<std::size_t>(std::ceil(t / 0.01));
        double h = t / static_cast<double>(intervals);

        const auto& rule = gaussLegendreRule(30);

        std::vector<double> offset(problem.dim);

        for(std::size_t interval = 0; interval < intervals; ++interval)
        {
            double mid = (static_cast<double>(interval) + 0.5) * h;

            for(std::size_t q = 0; q < rule.points.size(); ++q)
            {
                double tau = mid + 0.5 * h * rule.points[q];

                problem.path(tau, offset);
                for(std::size_t a = 0; a < problem.dim; ++a) offset[a] = x[a] - offset[a];

                double width = std::sqrt(problem.sigma * problem.sigma +
                                         2.0 * problem.conductivity * (t - tau) / problem.capacity);

                u += 0.5 * h * rule.weights[q] * problem.intensity(tau) *
                     gaussian(offset, width, problem.dim) / problem.capacity;
            }
        }

        return u;
    };
}

namespace
{

[[noreturn]] void throwNonFinitePoint(const char* what, std::span<const double> x)
{
    std::ostringstream msg;
    msg << "error norm: non-finite " << what << " at point (";
    for(std::size_t a = 0; a < x.size(); ++a) msg << (a ? ", " : "") << x[a];
    msg << ")";
    throw std::runtime_error(msg.str());
}

// Accumulates kernel(x, uh, graduh, weight) over a per-element tensor
// Gauss rule with degree + 1 points per axis.
template<typename Kernel>
double integrateError(const Basis& basis, std::span<const double> coefficients, Kernel&& kernel)
{
    const HierarchicalMesh& mesh = *basis.mesh;
    std::size_t d = mesh.dim;

    double total = 0.0;

    std::vector<double> x(d), r(d), grad(d);

    for(CellIndex element : mesh.leafCells)
    {
        auto degrees = elementMaxDegrees(mesh, basis.masks, element);

        std::vector<const QuadratureRule*> rules(d);
        Shape counts(d);
        double detJ = 1.0;

        for(std::size_t a = 0; a < d; ++a)
        {
            counts[a] = degrees[a] + 1;
            rules[a] = &gaussLegendreRule(counts[a]);
            detJ *= mesh.halfExtent(element, a);
        }

        forEachIndex(counts, [&](std::span<const std::size_t> idx)
        {
            double w = detJ;
            for(std::size_t a = 0; a < d; ++a)
            {
                r[a] = rules[a]->points[idx[a]];
                w *= rules[a]->weights[idx[a]];
            }

            mapToGlobal(mesh, element, r, x);

            double value;
            solutionValueGradient(basis, coefficients, element, r, value, grad);

            total += kernel(std::span<const double>(x), value,
                            std::span<const double>(grad), w);
        });
    }

    return std::sqrt(total);
}

} // namespace

double energyErrorNorm(const Basis& basis,
                       std::span<const double> coefficients,
                       const VectorField& exactGradient,
                       double kappa)
{
    std::size_t d = basis.mesh->dim;
    std::vector<double> exact(d);

    return integrateError(basis, coefficients,
        [&](std::span<const double> x, double, std::span<const double> grad, double w)
    {
        exactGradient(x, exact);

        double e2 = 0.0;
        for(std::size_t a = 0; a < d; ++a)
        {
            if(!std::isfinite(exact[a])) throwNonFinitePoint("exact gradient", x);
            double e = grad[a] - exact[a];
            e2 += e * e;
        }

        return w * kappa * e2;
    });
}

double l2ErrorNorm(const Basis& basis,
                   std::span<const double> coefficients,
                   const ScalarField& exact)
{
    return integrateError(basis, coefficients,
        [&](std::span<const double> x, double value, std::span<const double>, double w)
    {
        double u = exact(x);
        if(!std::isfinite(u)) throwNonFinitePoint("exact value", x);

        double e = value - u;
        return w * e * e;
    });
}

} // namespace hpcart
