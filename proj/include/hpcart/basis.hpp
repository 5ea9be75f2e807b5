#pragma once

#include "hpcart/dofmap.hpp"

#include <span>
#include <vector>

namespace hpcart
{

// Evaluates the basis functions contributing to a leaf element at local
// coordinates r, differentiated k(a) times per axis (k in {0, 1}). Walks
// leaf to root, evaluating the active tensor-product entries per cell in
// row-major order and mapping coordinates and derivatives to the leaf
// frame with each level climbed. Result order matches the element's
// location map.
std::vector<double> evaluateShapes(const HierarchicalMesh& mesh,
                                   const std::vector<TensorMask>& masks,
                                   CellIndex element,
                                   std::span<const double> r,
                                   std::span<const int> k);

// Per-axis maximum polynomial degree over the leaf and its ancestors,
// from the mask shapes, floored at 1. Determines quadrature orders.
std::vector<std::size_t> elementMaxDegrees(const HierarchicalMesh& mesh,
                                           const std::vector<TensorMask>& masks,
                                           CellIndex element);

/// A finished discretization: mesh, masks, global numbering, element maps.
struct Basis
{
    const HierarchicalMesh* mesh = nullptr;
    std::vector<TensorMask> masks;
    std::vector<LocationMatrix> matrices;
    std::vector<std::vector<DofIndex>> locationMaps; // per leaf, leaf-index order
    std::size_t nDofs = 0;
};

// Runs the full construction chain: masks, global indices, interface
// identification, compression, location maps. Degrees are per leaf in
// leaf-index order. The mesh must outlive the basis.
Basis makeBasis(const HierarchicalMesh& mesh,
                const std::vector<std::vector<std::size_t>>& leafDegrees,
                SpaceType space);

// Field value (or local derivative mapped to global coordinates) at local
// coordinates r of a leaf element.
double evaluateSolution(const Basis& basis,
                        std::span<const double> coefficients,
                        CellIndex element,
                        std::span<const double> r,
                        std::span<const int> k);

// Value and global-coordinate gradient in one call.
void solutionValueGradient(const Basis& basis,
                           std::span<const double> coefficients,
                           CellIndex element,
                           std::span<const double> r,
                           double& value,
                           std::span<double> gradient);

} // namespace hpcart
