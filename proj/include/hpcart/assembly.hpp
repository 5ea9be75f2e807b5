#pragma once

#include "hpcart/basis.hpp"

#include <functional>
#include <span>
#include <vector>

namespace hpcart
{

// Compressed sparse row matrix with a structurally symmetric pattern.
// Columns are sorted ascending per row; assembly never inserts outside
// the pre-allocated pattern.
struct SparseMatrixCSR
{
    std::size_t rows = 0;
    std::vector<std::size_t> offsets; // rows + 1
    std::vector<DofIndex> cols;
    std::vector<double> values;

    std::size_t nnz() const { return cols.size(); }

    /// Reference to the stored entry (row, col); throws if outside the pattern.
    double& at(std::size_t row, DofIndex col);

    double at(std::size_t row, DofIndex col) const
    {
        return const_cast<SparseMatrixCSR*>(this)->at(row, col);
    }

    void multiply(std::span<const double> x, std::span<double> y, int threads = 0) const;
};

struct LinearSystem
{
    SparseMatrixCSR matrix;
    std::vector<double> rhs;
};

using ScalarField = std::function<double(std::span<const double>)>;

/// Domain face identified by axis and side (0 = lower, 1 = upper).
using DomainFace = std::pair<std::size_t, std::size_t>;

// Zero-valued matrix whose pattern is the union over elements of
// map x map.
SparseMatrixCSR allocateSparsity(const std::vector<std::vector<DofIndex>>& locationMaps,
                                 std::size_t nDofs);

// Poisson system: K = int kappa grad(Ni).grad(Nj), F = int Ni f plus
// Neumann flux terms over external faces in the given set. Quadrature
// uses the per-axis hierarchical maximum degree + 1 points.
LinearSystem assemblePoisson(const Basis& basis,
                             const ScalarField& kappa,
                             const ScalarField& source,
                             const std::vector<DomainFace>& neumannFaces = {},
                             const ScalarField& neumannFlux = {});

/// Mass system: K = int c Ni Nj, F = int Ni g (g optional).
LinearSystem assembleMass(const Basis& basis,
                          const ScalarField& massCoefficient,
                          const ScalarField& projected = {});

// One theta-scheme time step with possibly different old and new meshes
// sharing a base grid. Integrates over the common refinement of both
// grids; the old solution and its gradient are evaluated through the old
// basis at each quadrature point.
LinearSystem assembleThetaStep(const Basis& basisNew,
                               const Basis& basisOld,
                               std::span<const double> oldCoefficients,
                               double theta,
                               double dt,
                               double capacity,
                               double conductivity,
                               const ScalarField& sourceOld,
                               const ScalarField& sourceNew);

struct DirichletResult
{
    std::vector<DofIndex> dofs;
    std::vector<double> values;
};

// Computes boundary dof values by a global L2 projection of g on the
// given external faces and eliminates them from the system by symmetric
// substitution (fixed rows and columns become identity).
DirichletResult projectAndEliminate(LinearSystem& system,
                                    const Basis& basis,
                                    const std::vector<DomainFace>& faces,
                                    const ScalarField& g);

} // namespace hpcart
