#include "hpcart/assembly.hpp"
#include "hpcart/polynomials.hpp"
#include "hpcart/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hpcart
{

double& SparseMatrixCSR::at(std::size_t row, DofIndex col)
{
    auto begin = cols.begin() + static_cast<std::ptrdiff_t>(offsets[row]);
    auto end = cols.begin() + static_cast<std::ptrdiff_t>(offsets[row + 1]);
    auto it = std::lower_bound(begin, end, col);

    if(it == end || *it != col)
        throw std::runtime_error("SparseMatrixCSR: entry outside allocated pattern");

    return values[static_cast<std::size_t>(it - cols.begin())];
}

void SparseMatrixCSR::multiply(std::span<const double> x, std::span<double> y, int threads) const
{
    auto rowRange = [&](std::size_t begin, std::size_t end)
    {
        for(std::size_t i = begin; i < end; ++i)
        {
            double sum = 0.0;
            for(std::size_t j = offsets[i]; j < offsets[i + 1]; ++j)
                sum += values[j] * x[cols[j]];
            y[i] = sum;
        }
    };

    if(threads <= 1)
    {
        rowRange(0, rows);
        return;
    }

    std::vector<std::thread> workers;
    std::size_t chunk = (rows + threads - 1) / threads;

    for(int t = 0; t < threads; ++t)
    {
        std::size_t begin = std::min(rows, t * chunk);
        std::size_t end = std::min(rows, begin + chunk);
        if(begin < end) workers.emplace_back(rowRange, begin, end);
    }
    for(auto& w : workers) w.join();
}

SparseMatrixCSR allocateSparsity(const std::vector<std::vector<DofIndex>>& locationMaps,
                                 std::size_t nDofs)
{
    std::vector<std::vector<DofIndex>> rowCols(nDofs);

    for(const auto& map : locationMaps)
    {
        for(auto i : map)
        {
            if(i >= nDofs)
                throw std::invalid_argument("allocateSparsity: dof id out of range");
            rowCols[i].insert(rowCols[i].end(), map.begin(), map.end());
        }
    }

    SparseMatrixCSR matrix;
    matrix.rows = nDofs;
    matrix.offsets.resize(nDofs + 1, 0);

    for(std::size_t i = 0; i < nDofs; ++i)
    {
        auto& cols = rowCols[i];
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        matrix.offsets[i + 1] = matrix.offsets[i] + cols.size();
    }

    matrix.cols.reserve(matrix.offsets[nDofs]);
    for(auto& cols : rowCols)
        matrix.cols.insert(matrix.cols.end(), cols.begin(), cols.end());

    matrix.values.assign(matrix.cols.size(), 0.0);
    return matrix;
}

namespace
{

[[noreturn]] void throwNonFinite(const char* what, CellIndex element, std::span<const double> x)
{
    std::ostringstream msg;
    msg << "assembly: non-finite " << what << " on element " << element << " at point (";
    for(std::size_t a = 0; a < x.size(); ++a) msg << (a ? ", " : "") << x[a];
    msg << ")";
    throw std::runtime_error(msg.str());
}

double checkedEval(const ScalarField& field, CellIndex element,
                   std::span<const double> x, const char* what)
{
    double v = field(x);
    if(!std::isfinite(v)) throwNonFinite(what, element, x);
    return v;
}

std::vector<double> insertFaceCoordinate(std::span<const double> rFace,
                                         std::size_t axis, std::size_t side)
{
    std::vector<double> r(rFace.begin(), rFace.end());
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(axis), side == 0 ? -1.0 : 1.0);
    return r;
}

// Shape values and global-coordinate gradients of one element at local r.
struct ShapeData
{
    std::vector<double> N;
    std::vector<std::vector<double>> dN; // per axis
};

ShapeData shapeData(const Basis& basis, CellIndex element, std::span<const double> r)
{
    const HierarchicalMesh& mesh = *basis.mesh;
    std::size_t d = mesh.dim;

    ShapeData data;
    std::vector<int> k(d, 0);
    data.N = evaluateShapes(mesh, basis.masks, element, r, k);
    data.dN.resize(d);

    for(std::size_t a = 0; a < d; ++a)
    {
        k[a] = 1;
        data.dN[a] = evaluateShapes(mesh, basis.masks, element, r, k);
        k[a] = 0;

        double inv = 1.0 / mesh.halfExtent(element, a);
        for(auto& v : data.dN[a]) v *= inv;
    }

    return data;
}

void scatter(SparseMatrixCSR& matrix, std::vector<double>& rhs,
             const std::vector<DofIndex>& map,
             const std::vector<double>& ke, const std::vector<double>& fe)
{
    std::size_t m = map.size();
    for(std::size_t i = 0; i < m; ++i)
    {
        for(std::size_t j = 0; j < m; ++j)
            matrix.at(map[i], map[j]) += ke[i * m + j];
        rhs[map[i]] += fe[i];
    }
}

// Iterates a tensor Gauss rule with the given per-axis point counts,
// passing local coordinates and the product weight.
template<typename F>
void forEachQuadraturePoint(std::span<const std::size_t> counts, F&& f)
{
    std::size_t d = counts.size();
    std::vector<const QuadratureRule*> rules(d);
    for(std::size_t a = 0; a < d; ++a) rules[a] = &gaussLegendreRule(counts[a]);

    std::vector<double> r(d);
    forEachIndex(counts, [&](std::span<const std::size_t> idx)
    {
        double w = 1.0;
        for(std::size_t a = 0; a < d; ++a)
        {
            r[a] = rules[a]->points[idx[a]];
            w *= rules[a]->weights[idx[a]];
        }
        f(std::span<const double>(r), w);
    });
}

LinearSystem assembleGeneral(const Basis& basis,
                             const ScalarField& massCoefficient,
                             const ScalarField& stiffnessCoefficient,
                             const ScalarField& source,
                             const std::vector<DomainFace>& neumannFaces,
                             const ScalarField& neumannFlux)
{
    const HierarchicalMesh& mesh = *basis.mesh;
    std::size_t d = mesh.dim;

    LinearSystem system;
    system.matrix = allocateSparsity(basis.locationMaps, basis.nDofs);
    system.rhs.assign(basis.nDofs, 0.0);

    std::vector<double> x(d);

    for(CellIndex element : mesh.leafCells)
    {
        const auto& map = basis.locationMaps[mesh.leafIndex[element]];
        std::size_t m = map.size();

        std::vector<double> ke(m * m, 0.0), fe(m, 0.0);

        auto degrees = elementMaxDegrees(mesh, basis.masks, element);
        Shape counts(d);
        for(std::size_t a = 0; a < d; ++a) counts[a] = degrees[a] + 1;

        double detJ = 1.0;
        for(std::size_t a = 0; a < d; ++a) detJ *= mesh.halfExtent(element, a);

        forEachQuadraturePoint(counts, [&](std::span<const double> r, double w)
        {
            mapToGlobal(mesh, element, r, x);

            auto shapes = shapeData(basis, element, r);
            double scale = w * detJ;

            double cm = massCoefficient ? checkedEval(massCoefficient, element, x, "mass coefficient") : 0.0;
            double ck = stiffnessCoefficient ? checkedEval(stiffnessCoefficient, element, x, "conductivity") : 0.0;
            double f = source ? checkedEval(source, element, x, "source") : 0.0;

            for(std::size_t i = 0; i < m; ++i)
            {
                for(std::size_t j = 0; j < m; ++j)
                {
                    double entry = 0.0;
                    if(cm != 0.0) entry += cm * shapes.N[i] * shapes.N[j];
                    if(ck != 0.0)
                        for(std::size_t a = 0; a < d; ++a)
                            entry += ck * shapes.dN[a][i] * shapes.dN[a][j];
                    ke[i * m + j] += scale * entry;
                }
                if(f != 0.0) fe[i] += scale * shapes.N[i] * f;
            }
        });

        // Neumann flux over external faces in the requested set
        if(neumannFlux)
        {
            for(auto [a, f] : neumannFaces)
            {
                if(mesh.neighbor(element, a, f) != NO_CELL) continue;

                auto faceCounts = removeEntry(counts, a);
                double faceJ = detJ / mesh.halfExtent(element, a);

                forEachQuadraturePoint(faceCounts, [&](std::span<const double> rFace, double w)
                {
                    auto r = insertFaceCoordinate(rFace, a, f);
                    mapToGlobal(mesh, element, r, x);

                    std::vector<int> k(d, 0);
                    auto N = evaluateShapes(mesh, basis.masks, element, r, k);
                    double h = checkedEval(neumannFlux, element, x, "flux");

                    for(std::size_t i = 0; i < m; ++i)
                        fe[i] += w * faceJ * N[i] * h;
                });
            }
        }

        scatter(system.matrix, system.rhs, map, ke, fe);
    }

    return system;
}

} // namespace

LinearSystem assemblePoisson(const Basis& basis,
                             const ScalarField& kappa,
                             const ScalarField& source,
                             const std::vector<DomainFace>& neumannFaces,
                             const ScalarField& neumannFlux)
{
    return assembleGeneral(basis, {}, kappa, source, neumannFaces, neumannFlux);
}

LinearSystem assembleMass(const Basis& basis,
                          const ScalarField& massCoefficient,
                          const ScalarField& projected)
{
    return assembleGeneral(basis, massCoefficient, {}, projected, {}, {});
}

LinearSystem assembleThetaStep(const Basis& basisNew,
                               const Basis& basisOld,
                               std::span<const double> oldCoefficients,
                               double theta,
                               double dt,
                               double capacity,
                               double conductivity,
                               const ScalarField& sourceOld,
                               const ScalarField& sourceNew)
{
    if(theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("assembleThetaStep: theta must be in [0, 1]");
    if(dt <= 0.0)
        throw std::invalid_argument("assembleThetaStep: dt must be positive");

    const HierarchicalMesh& meshNew = *basisNew.mesh;
    const HierarchicalMesh& meshOld = *basisOld.mesh;
    std::size_t d = meshNew.dim;

    auto pairs = commonRefinement(meshNew, meshOld);

    LinearSystem system;
    system.matrix = allocateSparsity(basisNew.locationMaps, basisNew.nDofs);
    system.rhs.assign(basisNew.nDofs, 0.0);

    double cdt = capacity / dt;

    std::vector<double> x(d), rNew(d), rOld(d), gradOld(d);

    for(const auto& pair : pairs)
    {
        const auto& map = basisNew.locationMaps[meshNew.leafIndex[pair.leafA]];
        std::size_t m = map.size();

        std::vector<double> ke(m * m, 0.0), fe(m, 0.0);

        auto degNew = elementMaxDegrees(meshNew, basisNew.masks, pair.leafA);
        auto degOld = elementMaxDegrees(meshOld, basisOld.masks, pair.leafB);

        Shape counts(d);
        double detJ = 1.0;
        for(std::size_t a = 0; a < d; ++a)
        {
            counts[a] = std::max(degNew[a], degOld[a]) + 1;
            detJ *= 0.5 * (pair.hi[a] - pair.lo[a]);
        }

        forEachQuadraturePoint(counts, [&](std::span<const double> rBox, double w)
        {
            for(std::size_t a = 0; a < d; ++a)
                x[a] = 0.5 * (pair.lo[a] + pair.hi[a]) + 0.5 * (pair.hi[a] - pair.lo[a]) * rBox[a];

            mapToLocal(meshNew, pair.leafA, x, rNew);
            mapToLocal(meshOld, pair.leafB, x, rOld);

            auto shapes = shapeData(basisNew, pair.leafA, rNew);

            double uOld;
            solutionValueGradient(basisOld, oldCoefficients, pair.leafB, rOld, uOld, gradOld);

            double fOld = sourceOld ? checkedEval(sourceOld, pair.leafA, x, "source") : 0.0;
            double fNew = sourceNew ? checkedEval(sourceNew, pair.leafA, x, "source") : 0.0;

            double scale = w * detJ;
            double load = cdt * uOld + theta * fNew + (1.0 - theta) * fOld;

            for(std::size_t i = 0; i < m; ++i)
            {
                for(std::size_t j = 0; j < m; ++j)
                {
                    double entry = cdt * shapes.N[i] * shapes.N[j];
                    if(theta != 0.0)
                        for(std::size_t a = 0; a < d; ++a)
                            entry += conductivity * theta * shapes.dN[a][i] * shapes.dN[a][j];
                    ke[i * m + j] += scale * entry;
                }

                double rhsEntry = shapes.N[i] * load;
                if(theta != 1.0)
                    for(std::size_t a = 0; a < d; ++a)
                        rhsEntry -= conductivity * (1.0 - theta) * shapes.dN[a][i] * gradOld[a];
                fe[i] += scale * rhsEntry;
            }
        });

        scatter(system.matrix, system.rhs, map, ke, fe);
    }

    return system;
}

DirichletResult projectAndEliminate(LinearSystem& system,
                                    const Basis& basis,
                                    const std::vector<DomainFace>& faces,
                                    const ScalarField& g)
{
    const HierarchicalMesh& mesh = *basis.mesh;
    std::size_t d = mesh.dim;

    // Boundary dofs: slots in an external-face slice of any cell over the
    // given faces; all other basis functions vanish on those faces.
    std::vector<DofIndex> boundaryDofs;

    for(CellIndex i = 0; i < mesh.cellCount(); ++i)
    {
        for(auto [a, f] : faces)
        {
            if(mesh.neighbor(i, a, f) != NO_CELL) continue;

            const auto& matrix = basis.matrices[i];
            if(matrix.shape()[a] <= f) continue;

            forEachIndex(removeEntry(matrix.shape(), a), [&](std::span<const std::size_t> in)
            {
                DofIndex dof = matrix[insertEntry(in, a, f)];
                if(dof != NO_DOF) boundaryDofs.push_back(dof);
            });
        }
    }

    std::sort(boundaryDofs.begin(), boundaryDofs.end());
    boundaryDofs.erase(std::unique(boundaryDofs.begin(), boundaryDofs.end()), boundaryDofs.end());

    DirichletResult result;
    result.dofs = boundaryDofs;
    result.values.assign(boundaryDofs.size(), 0.0);

    if(!boundaryDofs.empty())
    {
        std::vector<DofIndex> local(basis.nDofs, NO_DOF);
        for(std::size_t i = 0; i < boundaryDofs.size(); ++i)
            local[boundaryDofs[i]] = static_cast<DofIndex>(i);

        // Face location maps restricted to the boundary set, with the
        // positions of the retained shapes
        struct FaceBlock
        {
            CellIndex element;
            std::size_t axis, side;
            std::vector<std::size_t> shapePos;
            std::vector<DofIndex> localDofs;
        };

        std::vector<FaceBlock> blocks;
        std::vector<std::vector<DofIndex>> blockMaps;

        for(CellIndex element : mesh.leafCells)
        {
            const auto& map = basis.locationMaps[mesh.leafIndex[element]];

            for(auto [a, f] : faces)
            {
                if(mesh.neighbor(element, a, f) != NO_CELL) continue;

                FaceBlock block{ element, a, f, {}, {} };
                for(std::size_t i = 0; i < map.size(); ++i)
                {
                    if(local[map[i]] != NO_DOF)
                    {
                        block.shapePos.push_back(i);
                        block.localDofs.push_back(local[map[i]]);
                    }
                }

                blockMaps.push_back(block.localDofs);
                blocks.push_back(std::move(block));
            }
        }

        auto boundaryMass = allocateSparsity(blockMaps, boundaryDofs.size());
        std::vector<double> boundaryRhs(boundaryDofs.size(), 0.0);
        std::vector<double> x(d);
        std::vector<int> k(d, 0);

        for(const auto& block : blocks)
        {
            auto degrees = elementMaxDegrees(mesh, basis.masks, block.element);
            Shape counts(d);
            for(std::size_t a = 0; a < d; ++a) counts[a] = degrees[a] + 1;
            auto faceCounts = removeEntry(counts, block.axis);

            double faceJ = 1.0;
            for(std::size_t a = 0; a < d; ++a)
                if(a != block.axis) faceJ *= mesh.halfExtent(block.element, a);

            std::size_t m = block.localDofs.size();
            std::vector<double> me(m * m, 0.0), be(m, 0.0);

            forEachQuadraturePoint(faceCounts, [&](std::span<const double> rFace, double w)
            {
                auto r = insertFaceCoordinate(rFace, block.axis, block.side);
                mapToGlobal(mesh, block.element, r, x);

                auto N = evaluateShapes(mesh, basis.masks, block.element, r, k);
                double gv = checkedEval(g, block.element, x, "boundary value");

                for(std::size_t i = 0; i < m; ++i)
                {
                    double Ni = N[block.shapePos[i]];
                    for(std::size_t j = 0; j < m; ++j)
                        me[i * m + j] += w * faceJ * Ni * N[block.shapePos[j]];
                    be[i] += w * faceJ * Ni * gv;
                }
            });

            scatter(boundaryMass, boundaryRhs, block.localDofs, me, be);
        }

        auto report = cgJacobi(boundaryMass, boundaryRhs, 1e-13,
                               10 * boundaryDofs.size() + 100);
        result.values = std::move(report.x);
    }

    // Symmetric substitution: move known columns to the right-hand side,
    // then pin the fixed rows and columns
    std::vector<double> fixedValue(basis.nDofs, 0.0);
    std::vector<std::uint8_t> isFixed(basis.nDofs, 0);

    for(std::size_t i = 0; i < result.dofs.size(); ++i)
    {
        fixedValue[result.dofs[i]] = result.values[i];
        isFixed[result.dofs[i]] = 1;
    }

    auto& K = system.matrix;

    for(std::size_t row = 0; row < K.rows; ++row)
    {
        for(std::size_t j = K.offsets[row]; j < K.offsets[row + 1]; ++j)
        {
            DofIndex col = K.cols[j];

            if(isFixed[row])
            {
                K.values[j] = (col == row) ? 1.0 : 0.0;
            }
            else if(isFixed[col])
            {
                system.rhs[row] -= K.values[j] * fixedValue[col];
                K.values[j] = 0.0;
            }
        }
        if(isFixed[row]) system.rhs[row] = fixedValue[row];
    }

    return result;
}

} // namespace hpcart
