#include "doctest.h"

#include "hpcart/assembly.hpp"
#include "hpcart/solver.hpp"

#include <cmath>
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

const ScalarField one = [](std::span<const double>) { return 1.0; };
const ScalarField zero = [](std::span<const double>) { return 0.0; };

} // namespace

TEST_CASE("sparsity pattern is the union of element blocks")
{
    std::vector<std::vector<DofIndex>> maps{ { 0, 1, 2 }, { 2, 3 } };
    auto matrix = allocateSparsity(maps, 4);

    CHECK(matrix.rows == 4);
    CHECK(matrix.nnz() == 9 + 4 - 1); // overlapping (2,2) counted once

    CHECK_NOTHROW(matrix.at(0, 2));
    CHECK_NOTHROW(matrix.at(2, 3));
    CHECK_THROWS(matrix.at(0, 3)); // dofs 0 and 3 never share an element
    CHECK_THROWS(matrix.at(3, 0));
}

TEST_CASE("matvec agrees between sequential and threaded mode")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    auto mesh = unitGrid(2, 3);
    auto basis = makeUniformBasis(mesh, 2, SpaceType::Tensor);
    auto system = assemblePoisson(basis, one, one);

    std::vector<double> x(basis.nDofs), y0(basis.nDofs), y4(basis.nDofs);
    for(auto& v : x) v = dist(rng);

    system.matrix.multiply(x, y0, 0);
    system.matrix.multiply(x, y4, 4);

    for(std::size_t i = 0; i < basis.nDofs; ++i)
        CHECK(y0[i] == doctest::Approx(y4[i]).epsilon(1e-15));
}

TEST_CASE("one-dimensional linear element matrices")
{
    // single element [0, 1], p = 1
    auto mesh = unitGrid(1, 1);
    auto basis = makeUniformBasis(mesh, 1, SpaceType::Tensor);
    REQUIRE(basis.nDofs == 2);

    auto stiffness = assemblePoisson(basis, one, zero);
    CHECK(stiffness.matrix.at(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(stiffness.matrix.at(0, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(stiffness.matrix.at(1, 1) == doctest::Approx(1.0).epsilon(1e-14));

    auto mass = assembleMass(basis, one);
    CHECK(mass.matrix.at(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(mass.matrix.at(0, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(mass.matrix.at(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("source term integrates the load")
{
    auto mesh = unitGrid(1, 1);
    auto basis = makeUniformBasis(mesh, 1, SpaceType::Tensor);

    auto system = assemblePoisson(basis, one, one); // f = 1
    CHECK(system.rhs[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(system.rhs[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("neumann flux enters the right-hand side")
{
    auto mesh = unitGrid(2, 1);
    auto basis = makeUniformBasis(mesh, 1, SpaceType::Tensor);

    // flux 1 on the right face of the unit square: per-vertex weight 1/2
    auto system = assemblePoisson(basis, one, zero, { { 0, 1 } }, one);

    double total = 0.0;
    for(auto v : system.rhs) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));

    // only the two right-edge vertices receive load
    int loaded = 0;
    for(auto v : system.rhs)
        if(std::abs(v) > 1e-14)
        {
            ++loaded;
            CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
        }
    CHECK(loaded == 2);
}

TEST_CASE("poisson patch test on a hanging-node mesh")
{
    // u = x + y is in every space with p >= 1; solving with exact
    // Dirichlet data must reproduce it
    std::mt19937 rng(19);

    auto mesh = unitGrid(2, 2);
    mesh = refine(mesh, std::vector<CellIndex>{ 0, 3 });
    mesh = refine(mesh, std::vector<CellIndex>{ mesh.leafCells[2] });

    for(auto space : { SpaceType::Tensor, SpaceType::Trunk })
    {
        auto basis = makeUniformBasis(mesh, 2, space);

        ScalarField exact = [](std::span<const double> x) { return x[0] + x[1]; };

        auto system = assemblePoisson(basis, one, zero);

        std::vector<DomainFace> faces{ { 0, 0 }, { 0, 1 }, { 1, 0 }, { 1, 1 } };
        projectAndEliminate(system, basis, faces, exact);

        auto report = cgJacobi(system.matrix, system.rhs, 1e-13, 10000);

        // compare at random points
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        std::vector<double> x(2);
        std::vector<int> k(2, 0);

        for(int trial = 0; trial < 50; ++trial)
        {
            for(auto& v : x) v = dist(rng);
            auto [leaf, r] = findLeaf(mesh, x);
            CHECK(evaluateSolution(basis, report.x, leaf, r, k) ==
                  doctest::Approx(exact(x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("dirichlet projection reproduces polynomial boundary data")
{
    auto mesh = unitGrid(2, 2);
    auto basis = makeUniformBasis(mesh, 3, SpaceType::Tensor);

    ScalarField g = [](std::span<const double> x) { return x[0] * x[0] + 2.0 * x[1]; };

    auto system = assemblePoisson(basis, one, zero);
    auto result = projectAndEliminate(system, basis, { { 0, 0 }, { 1, 1 } }, g);

    CHECK(!result.dofs.empty());

    // fixed rows became identity rows carrying the projected value
    for(std::size_t i = 0; i < result.dofs.size(); ++i)
    {
        CHECK(system.matrix.at(result.dofs[i], result.dofs[i]) == 1.0);
        CHECK(system.rhs[result.dofs[i]] == result.values[i]);
    }

    // solving and evaluating on the boundary reproduces g (it is
    // polynomial of matching degree there)
    auto report = cgJacobi(system.matrix, system.rhs, 1e-13, 10000);

    std::vector<int> k(2, 0);
    for(double t : { 0.1, 0.45, 0.8 })
    {
        std::vector<double> x{ 0.0, t }; // on face (0, 0)
        auto [leaf, r] = findLeaf(mesh, x);
        CHECK(evaluateSolution(basis, report.x, leaf, r, k) ==
              doctest::Approx(g(x)).epsilon(1e-9));
    }
}

TEST_CASE("non-finite field values are reported with context")
{
    auto mesh = unitGrid(1, 1);
    auto basis = makeUniformBasis(mesh, 1, SpaceType::Tensor);

    ScalarField bad = [](std::span<const double>) { return std::nan(""); };

    try
    {
        assemblePoisson(basis, one, bad);
        FAIL("expected an exception");
    }
    catch(const std::runtime_error& error)
    {
        std::string message = error.what();
        CHECK(message.find("element") != std::string::npos);
        CHECK(message.find("non-finite") != std::string::npos);
    }
}

TEST_CASE("theta step: conduction-free closed form")
{
    // c du/dt = f with kappa = 0 and constant f: u1 = u0 + dt f / c
    auto mesh = unitGrid(1, 2);
    auto basis = makeUniformBasis(mesh, 2, SpaceType::Tensor);

    double dt = 0.1, capacity = 2.0, f = 3.0;

    ScalarField uInitial = [](std::span<const double> x) { return 1.0 + x[0]; };
    auto initial = assembleMass(basis, one, uInitial);
    auto u0 = cgJacobi(initial.matrix, initial.rhs, 1e-14, 1000).x;

    ScalarField constantF = [f](std::span<const double>) { return f; };

    for(double theta : { 0.0, 0.5, 1.0 })
    {
        auto system = assembleThetaStep(basis, basis, u0, theta, dt, capacity, 0.0,
                                        constantF, constantF);
        auto u1 = cgJacobi(system.matrix, system.rhs, 1e-14, 1000).x;

        std::vector<int> k{ 0 };
        for(double xv : { 0.1, 0.3, 0.6, 0.9 })
        {
            std::vector<double> x{ xv };
            auto [leaf, r] = findLeaf(mesh, x);
            double expected = uInitial(x) + dt * f / capacity;
            CHECK(evaluateSolution(basis, u1, leaf, r, k) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("theta step across different meshes transfers exactly")
{
    // old mesh refined, new mesh uniform: stepping a function that both
    // spaces represent exactly must be lossless
    auto meshOld = unitGrid(1, 2);
    meshOld = refine(meshOld, std::vector<CellIndex>{ 1 });
    auto basisOld = makeUniformBasis(meshOld, 2, SpaceType::Tensor);

    auto meshNew = unitGrid(1, 2);
    auto basisNew = makeUniformBasis(meshNew, 2, SpaceType::Tensor);

    ScalarField uInitial = [](std::span<const double> x) { return x[0] * x[0]; };
    auto initial = assembleMass(basisOld, one, uInitial);
    auto u0 = cgJacobi(initial.matrix, initial.rhs, 1e-14, 1000).x;

    auto system = assembleThetaStep(basisNew, basisOld, u0, 1.0, 0.5, 1.0, 0.0,
                                    zero, zero);
    auto u1 = cgJacobi(system.matrix, system.rhs, 1e-14, 1000).x;

    std::vector<int> k{ 0 };
    for(double xv : { 0.05, 0.3, 0.62, 0.97 })
    {
        std::vector<double> x{ xv };
        auto [leaf, r] = findLeaf(meshNew, x);
        CHECK(evaluateSolution(basisNew, u1, leaf, r, k) ==
              doctest::Approx(xv * xv).epsilon(1e-12));
    }
}

TEST_CASE("theta step argument validation")
{
    auto mesh = unitGrid(1, 1);
    auto basis = makeUniformBasis(mesh, 1, SpaceType::Tensor);
    std::vector<double> u0(basis.nDofs, 0.0);

    CHECK_THROWS(assembleThetaStep(basis, basis, u0, -0.1, 0.1, 1.0, 1.0, zero, zero));
    CHECK_THROWS(assembleThetaStep(basis, basis, u0, 0.5, 0.0, 1.0, 1.0, zero, zero));
}
