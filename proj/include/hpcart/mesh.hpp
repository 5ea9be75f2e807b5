#pragma once

#include "hpcart/ndarray.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace hpcart
{

// Hierarchical Cartesian mesh with 2^d-ary refinement trees stored as
// flat arrays. Cells are append-only; refine returns a new mesh value.
// A neighbor entry is NO_CELL (external boundary), a cell on the same
// refinement level (internal interface), or a coarser leaf (internal
// boundary / hanging interface).
struct HierarchicalMesh
{
    std::size_t dim = 0;
    std::vector<std::array<double, 2>> bounds;
    std::vector<std::size_t> baseShape;

    std::vector<CellIndex> neighbors; // (n_cell, d, 2)
    std::vector<CellIndex> parent;
    std::vector<CellIndex> firstChild; // NO_CELL for leaves
    std::vector<std::uint16_t> level;
    std::vector<std::uint8_t> isLeaf;

    std::vector<double> boxLo, boxHi; // (n_cell, d) cell geometry

    std::vector<CellIndex> leafCells; // leaf ids ascending
    std::vector<CellIndex> leafIndex; // dense leaf renumbering, NO_CELL else

    std::size_t cellCount() const { return parent.size(); }
    std::size_t leafCount() const { return leafCells.size(); }

    CellIndex neighbor(CellIndex i, std::size_t a, std::size_t f) const
    {
        return neighbors[(i * dim + a) * 2 + f];
    }

    std::span<const double> lo(CellIndex i) const { return { boxLo.data() + i * dim, dim }; }
    std::span<const double> hi(CellIndex i) const { return { boxHi.data() + i * dim, dim }; }

    double halfExtent(CellIndex i, std::size_t a) const
    {
        return 0.5 * (boxHi[i * dim + a] - boxLo[i * dim + a]);
    }
};

/// Overlap box between one leaf of each of two meshes with a common base grid.
struct IntegrationCellPair
{
    CellIndex leafA;
    CellIndex leafB;
    std::vector<double> lo, hi;
};

// All cells are level-0 leaves in lexicographic order (axis 0 slowest).
HierarchicalMesh createBaseGrid(std::vector<std::array<double, 2>> bounds,
                                std::vector<std::size_t> baseShape);

// Overlays each marked leaf with 2^d children from bisection per axis.
// Children are appended in ascending order of the marked ids, each block
// in lexicographic child order (binary tuple over axes, axis 0 slowest).
HierarchicalMesh refine(const HierarchicalMesh& mesh, std::span<const CellIndex> marked);

/// Leaf containing x and the local coordinates of x in that leaf.
struct LeafLocation
{
    CellIndex leaf;
    std::vector<double> local;
};

// Points on shared faces resolve deterministically to the lower-coordinate
// cell (the smaller id on any single-level grid).
LeafLocation findLeaf(const HierarchicalMesh& mesh, std::span<const double> x);

// Leaves of the union refinement tree of two meshes sharing the same base
// grid; the boxes partition the domain.
std::vector<IntegrationCellPair> commonRefinement(const HierarchicalMesh& a,
                                                  const HierarchicalMesh& b);

// Maps local coordinates in [-1,1]^d of a cell to global coordinates.
void mapToGlobal(const HierarchicalMesh& mesh, CellIndex cell,
                 std::span<const double> local, std::span<double> global);

// Inverse of mapToGlobal for points inside the cell box.
void mapToLocal(const HierarchicalMesh& mesh, CellIndex cell,
                std::span<const double> global, std::span<double> local);

} // namespace hpcart
