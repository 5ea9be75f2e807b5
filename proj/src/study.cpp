#include "hpcart/study.hpp"
#include "hpcart/solver.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace hpcart
{

namespace
{

double seconds(std::chrono::steady_clock::time_point begin,
               std::chrono::steady_clock::time_point end)
{
    return std::chrono::duration<double>(end - begin).count();
}

} // namespace

void refineTowardPoint(HierarchicalMesh& mesh,
                       std::span<const double> point,
                       std::size_t levels,
                       double radius)
{
    for(std::size_t round = 0; round < levels; ++round)
    {
        double r = radius / static_cast<double>(std::size_t{1} << round);

        std::vector<CellIndex> marked;
        for(CellIndex leaf : mesh.leafCells)
        {
            if(mesh.level[leaf] != round) continue;

            double d2 = 0.0;
            for(std::size_t a = 0; a < mesh.dim; ++a)
            {
                double d = std::max({ mesh.lo(leaf)[a] - point[a],
                                      point[a] - mesh.hi(leaf)[a], 0.0 });
                d2 += d * d;
            }

            if(d2 <= r * r) marked.push_back(leaf);
        }

        if(!marked.empty()) mesh = refine(mesh, marked);
    }
}

std::vector<StudyRecord> runCornerStudy(const CornerStudyConfig& config)
{
    if(config.dim < 1 || config.maxDepth < 1)
        throw std::invalid_argument("runCornerStudy: need dim >= 1 and depth >= 1");

    std::size_t d = config.dim;
    auto fields = cornerFields(d);

    std::vector<StudyRecord> records;

    for(std::size_t r = 1; r <= config.maxDepth; ++r)
    {
        auto t0 = std::chrono::steady_clock::now();

        HierarchicalMesh mesh = createBaseGrid(
            std::vector<std::array<double, 2>>(d, { 0.0, 1.0 }), Shape(d, 2));

        std::vector<double> origin(d, 0.0);
        for(std::size_t round = 1; round < r; ++round)
            mesh = refine(mesh, std::vector{ findLeaf(mesh, origin).leaf });

        std::size_t expected = r * ((std::size_t{1} << d) - 1) + 1;
        if(mesh.leafCount() != expected)
            throw std::logic_error("runCornerStudy: unexpected leaf count");

        std::vector<std::vector<std::size_t>> degrees(mesh.leafCount());
        for(CellIndex leaf : mesh.leafCells)
        {
            std::size_t p = r + 1;
            if(config.grading == Grading::Linear)
                p = std::max<std::size_t>(r + 1 - mesh.level[leaf], 1);
            degrees[mesh.leafIndex[leaf]].assign(d, p);
        }

        Basis basis = makeBasis(mesh, degrees, config.space);

        auto t1 = std::chrono::steady_clock::now();

        auto system = assemblePoisson(basis, [](std::span<const double>) { return 1.0; },
                                      fields.f, fields.neumannFaces, {});
        projectAndEliminate(system, basis, fields.dirichletFaces, fields.u);

        auto t2 = std::chrono::steady_clock::now();

        auto report = cgJacobi(system.matrix, system.rhs, config.tolerance,
                               100 * basis.nDofs + 1000, {}, config.threads);

        auto t3 = std::chrono::steady_clock::now();

        StudyRecord record;
        record.study = "corner";
        record.index = r;
        record.nDofs = basis.nDofs;
        record.nnz = system.matrix.nnz();
        record.cgIterations = report.iterations;
        record.errEnergy = energyErrorNorm(basis, report.x, fields.gradU);
        record.errL2 = l2ErrorNorm(basis, report.x, fields.u);
        record.tMeshBasis = seconds(t0, t1);
        record.tAssembly = seconds(t1, t2);
        record.tSolve = seconds(t2, t3);
        records.push_back(record);

        if(!config.vtuDirectory.empty())
            writeVtu(basis, report.x,
                     config.vtuDirectory + "/corner_" + std::to_string(r) + ".vtu");
    }

    return records;
}

TransientStudyResult runTransientStudy(const TransientStudyConfig& config)
{
    const TransientProblem& problem = config.problem;
    std::size_t d = problem.dim;

    if(config.steps < 1)
        throw std::invalid_argument("runTransientStudy: need at least one step");
    if(config.theta < 0.0 || config.theta > 1.0)
        throw std::invalid_argument("runTransientStudy: theta must be in [0, 1]");

    auto source = movingSource(problem);
    auto reference = referenceSolution(problem);

    std::vector<DomainFace> dirichletFaces;
    for(std::size_t a = 0; a < d; ++a)
        for(std::size_t f = 0; f < 2; ++f)
            if(!(a == d - 1 && f == 1)) dirichletFaces.emplace_back(a, f);

    double dt = problem.endTime / static_cast<double>(config.steps);

    auto buildMesh = [&](double t)
    {
        std::vector<std::array<double, 2>> bounds(d);
        for(std::size_t a = 0; a < d; ++a) bounds[a] = { problem.lo[a], problem.hi[a] };

        auto mesh = std::make_unique<HierarchicalMesh>(
            createBaseGrid(std::move(bounds), Shape(d, 2)));

        std::vector<double> center(d);
        problem.path(t, center);
        refineTowardPoint(*mesh, center, config.refinementDepth, config.refinementRadius);

        return mesh;
    };

    auto buildBasis = [&](const HierarchicalMesh& mesh)
    {
        std::vector<std::vector<std::size_t>> degrees(
            mesh.leafCount(), std::vector<std::size_t>(d, config.degree));
        return makeBasis(mesh, degrees, config.space);
    };

    auto meshOld = buildMesh(0.0);
    Basis basisOld = buildBasis(*meshOld);

    // L2 projection of the initial value
    auto initialSystem = assembleMass(basisOld,
        [](std::span<const double>) { return 1.0; }, problem.initial);
    std::vector<double> coefficients =
        cgJacobi(initialSystem.matrix, initialSystem.rhs, 1e-13,
                 100 * basisOld.nDofs + 1000, {}, config.threads).x;

    TransientStudyResult result;

    auto att = [&](double t) { return [&, t](std::span<const double> x) { return reference(x, t); }; };
    double previousError = l2ErrorNorm(basisOld, coefficients, att(0.0));
    double spaceTime2 = 0.0;

    for(std::size_t n = 0; n < config.steps; ++n)
    {
        double tOld = static_cast<double>(n) * dt;
        double tNew = static_cast<double>(n + 1) * dt;

        auto t0 = std::chrono::steady_clock::now();

        auto meshNew = config.remesh ? buildMesh(tNew) : std::move(meshOld);
        Basis basisNew = config.remesh ? buildBasis(*meshNew) : std::move(basisOld);
        basisNew.mesh = meshNew.get();

        auto t1 = std::chrono::steady_clock::now();

        Basis* oldBasisPtr = config.remesh ? &basisOld : &basisNew;
        auto system = assembleThetaStep(basisNew, *oldBasisPtr, coefficients,
                                        config.theta, dt, problem.capacity,
                                        problem.conductivity,
                                        [&](std::span<const double> x) { return source(x, tOld); },
                                        [&](std::span<const double> x) { return source(x, tNew); });

        projectAndEliminate(system, basisNew, dirichletFaces,
                            [&](std::span<const double> x) { return reference(x, tNew); });

        auto t2 = std::chrono::steady_clock::now();

        auto report = cgJacobi(system.matrix, system.rhs, config.tolerance,
                               100 * basisNew.nDofs + 1000, {}, config.threads);

        auto t3 = std::chrono::steady_clock::now();

        double stepError = l2ErrorNorm(basisNew, report.x, att(tNew));
        spaceTime2 += 0.5 * dt * (previousError * previousError + stepError * stepError);
        previousError = stepError;

        StudyRecord record;
        record.study = "transient";
        record.index = n + 1;
        record.nDofs = basisNew.nDofs;
        record.nnz = system.matrix.nnz();
        record.cgIterations = report.iterations;
        record.errL2 = stepError;
        record.tMeshBasis = seconds(t0, t1);
        record.tAssembly = seconds(t1, t2);
        record.tSolve = seconds(t2, t3);
        result.records.push_back(record);

        if(!config.vtuDirectory.empty())
            writeVtu(basisNew, report.x,
                     config.vtuDirectory + "/step_" + std::to_string(n + 1) + ".vtu");

        coefficients = std::move(report.x);
        meshOld = std::move(meshNew);
        basisOld = std::move(basisNew);
        basisOld.mesh = meshOld.get();
    }

    result.spaceTimeError = std::sqrt(spaceTime2);
    return result;
}

} // namespace hpcart
