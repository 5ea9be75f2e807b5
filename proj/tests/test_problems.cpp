#include "doctest.h"

#include "hpcart/problems.hpp"
#include "hpcart/polynomials.hpp"
#include "hpcart/solver.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hpcart;

namespace
{

HierarchicalMesh unitGrid(std::size_t d, std::size_t perAxis)
{
    return createBaseGrid(std::vector<std::array<double, 2>>(d, { 0.0, 1.0 }),
                          Shape(d, perAxis));
}

Basis makeUniformBasis(const HierarchicalMesh& mesh, std::size_t p, SpaceType space)
{
    std::vector<std::vector<std::size_t>> degrees(
        mesh.leafCount(), std::vector<std::size_t>(mesh.dim, p));
    return makeBasis(mesh, degrees, space);
}

} // namespace

TEST_CASE("corner fields: frozen values")
{
    auto f2 = cornerFields(2);
    auto f3 = cornerFields(3);

    CHECK(f2.f(std::vector{ 1.0, 0.0 }) == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(f3.f(std::vector{ 1.0, 0.0, 0.0 }) == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(f3.f(std::vector{ 0.6, 0.8, 0.0 }) == doctest::Approx(-0.75).epsilon(1e-14));

    CHECK(f2.u(std::vector{ 1.0, 0.0 }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f2.u(std::vector{ 0.25, 0.0 }) == doctest::Approx(0.5).epsilon(1e-14));

    CHECK(f2.neumannFaces == std::vector<DomainFace>{ { 0, 0 }, { 1, 0 } });
    CHECK(f2.dirichletFaces == std::vector<DomainFace>{ { 0, 1 }, { 1, 1 } });
}

TEST_CASE("corner gradient vanishes normal to the coordinate planes")
{
    auto fields = cornerFields(3);
    std::vector<double> grad(3);

    fields.gradU(std::vector{ 0.0, 0.4, 0.7 }, grad);
    CHECK(std::abs(grad[0]) < 1e-12);

    fields.gradU(std::vector{ 0.3, 0.0, 0.7 }, grad);
    CHECK(std::abs(grad[1]) < 1e-12);
}

TEST_CASE("corner source equals the negative laplacian")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.1, 1.0);

    for(std::size_t d : { 2, 3 })
    {
        auto fields = cornerFields(d);
        double h = 1e-5;

        for(int trial = 0; trial < 50; ++trial)
        {
            std::vector<double> x(d);
            for(auto& v : x) v = dist(rng);

            double lap = 0.0;
            for(std::size_t a = 0; a < d; ++a)
            {
                auto xp = x, xm = x;
                xp[a] += h;
                xm[a] -= h;
                lap += (fields.u(xp) - 2.0 * fields.u(x) + fields.u(xm)) / (h * h);
            }

            CHECK(-lap == doctest::Approx(fields.f(x)).epsilon(1e-5));
        }
    }
}

TEST_CASE("corner gradient matches finite differences")
{
    auto fields = cornerFields(2);
    std::vector<double> grad(2);
    double h = 1e-7;

    for(auto x : { std::vector{ 0.3, 0.4 }, std::vector{ 0.9, 0.1 } })
    {
        fields.gradU(x, grad);
        for(std::size_t a = 0; a < 2; ++a)
        {
            auto xp = x, xm = x;
            xp[a] += h;
            xm[a] -= h;
            CHECK(grad[a] == doctest::Approx((fields.u(xp) - fields.u(xm)) / (2 * h))
                                 .epsilon(1e-6));
        }
    }
}

TEST_CASE("moving source is a normalized gaussian")
{
    auto problem = defaultTransientProblem(2);
    auto source = movingSource(problem);

    double t = 0.45 * problem.endTime;
    std::vector<double> center(2);
    problem.path(t, center);

    // integrate over a +-8 sigma box around the center
    const auto& rule = gaussLegendreRule(40);
    double half = 8.0 * problem.sigma;

    double integral = 0.0;
    std::vector<double> x(2);
    for(std::size_t i = 0; i < 40; ++i)
        for(std::size_t j = 0; j < 40; ++j)
        {
            x[0] = center[0] + half * rule.points[i];
            x[1] = center[1] + half * rule.points[j];
            integral += half * half * rule.weights[i] * rule.weights[j] * source(x, t);
        }

    CHECK(integral == doctest::Approx(problem.intensity(t)).epsilon(1e-10));
}

TEST_CASE("reference solution: initial value and converged quadrature")
{
    auto problem = defaultTransientProblem(2);
    problem.initial = [](std::span<const double> x) { return x[0]; };

    auto reference = referenceSolution(problem);

    CHECK(reference(std::vector{ 0.3, 0.4 }, 0.0) == doctest::Approx(0.3).epsilon(1e-14));

    // independent finer integrator as oracle
    problem.initial = {};
    auto coarse = referenceSolution(problem);

    auto fine = [&](std::span<const double> x, double t)
    {
        std::size_t intervals = static_cast<std::size_t>(std::ceil(t / 0.005));
        double h = t / static_cast<double>(intervals);
        const auto& rule = gaussLegendreRule(30);

        double u = 0.0;
        std::vector<double> offset(2);

        for(std::size_t n = 0; n < intervals; ++n)
        {
            double mid = (static_cast<double>(n) + 0.5) * h;
            for(std::size_t q = 0; q < 30; ++q)
            {
                double tau = mid + 0.5 * h * rule.points[q];
                problem.path(tau, offset);
                double r2 = 0.0;
                for(std::size_t a = 0; a < 2; ++a)
                {
                    offset[a] = x[a] - offset[a];
                    r2 += offset[a] * offset[a];
                }

                double w2 = problem.sigma * problem.sigma +
                            2.0 * problem.conductivity * (t - tau) / problem.capacity;
                double g = std::exp(-0.5 * r2 / w2) /
                           (problem.capacity * 2.0 * std::numbers::pi * w2);

                u += 0.5 * h * rule.weights[q] * problem.intensity(tau) * g;
            }
        }
        return u;
    };

    for(auto probe : { std::vector{ 0.5, 0.9 }, std::vector{ 0.3, 0.5 } })
        for(double t : { 0.13, 0.37, 0.5 })
            CHECK(coarse(probe, t) == doctest::Approx(fine(probe, t)).epsilon(1e-8));
}

TEST_CASE("error norms vanish for represented solutions")
{
    auto mesh = unitGrid(2, 2);
    mesh = refine(mesh, std::vector<CellIndex>{ 1 });
    auto basis = makeUniformBasis(mesh, 2, SpaceType::Tensor);

    // project u = x^2 + y, which the space contains exactly
    ScalarField exact = [](std::span<const double> x) { return x[0] * x[0] + x[1]; };
    VectorField exactGrad = [](std::span<const double> x, std::span<double> g)
    {
        g[0] = 2.0 * x[0];
        g[1] = 1.0;
    };

    auto system = assembleMass(basis, [](std::span<const double>) { return 1.0; }, exact);
    auto coefficients = cgJacobi(system.matrix, system.rhs, 1e-14, 10000).x;

    CHECK(l2ErrorNorm(basis, coefficients, exact) < 1e-10);
    CHECK(energyErrorNorm(basis, coefficients, exactGrad) < 1e-9);
}

TEST_CASE("energy norm of the corner solution against zero coefficients")
{
    // with u_h = 0 the energy error is |u|_E = sqrt(int 1/(4 r)); in polar
    // coordinates over the unit square the integral evaluates in closed
    // form to (1/2) ln(1 + sqrt(2))
    auto fields = cornerFields(2);
    double oracle = std::sqrt(0.5 * std::log(1.0 + std::sqrt(2.0)));

    auto mesh = unitGrid(2, 2);
    std::vector<double> originPoint{ 0.0, 0.0 };
    for(int round = 0; round < 6; ++round)
        mesh = refine(mesh, std::vector{ findLeaf(mesh, originPoint).leaf });

    auto basis = makeUniformBasis(mesh, 3, SpaceType::Tensor);
    std::vector<double> zero(basis.nDofs, 0.0);

    double measured = energyErrorNorm(basis, zero, fields.gradU);
    CHECK(measured == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("error norms report non-finite exact values")
{
    auto mesh = unitGrid(1, 1);
    auto basis = makeUniformBasis(mesh, 1, SpaceType::Tensor);
    std::vector<double> zero(basis.nDofs, 0.0);

    ScalarField bad = [](std::span<const double>) { return std::nan(""); };

    try
    {
        l2ErrorNorm(basis, zero, bad);
        FAIL("expected an exception");
    }
    catch(const std::runtime_error& error)
    {
        CHECK(std::string(error.what()).find("point") != std::string::npos);
    }
}
