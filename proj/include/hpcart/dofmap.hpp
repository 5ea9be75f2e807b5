#pragma once

#include "hpcart/masks.hpp"

#include <utility>
#include <vector>

namespace hpcart
{

// Global dof id per tensor-product slot, mirroring the cell's mask shape;
// NO_DOF exactly where the mask flag is false.
using LocationMatrix = NdArray<DofIndex>;

// Assigns consecutive ids in cell order, row-major within each cell.
// Returns the matrices and the raw id count before identification.
std::pair<std::vector<LocationMatrix>, std::size_t>
initializeGlobalIndices(const std::vector<TensorMask>& masks);

// Unifies ids across interfaces by copying the first cell's slice onto
// its neighbor (one sweep per axis, in-place so unified ids propagate),
// then compresses the surviving ids to 0..n_dofs-1 preserving order.
// Returns the compressed dof count.
std::size_t connectAndCompress(std::vector<LocationMatrix>& matrices,
                               const HierarchicalMesh& mesh,
                               std::size_t rawIdCount,
                               bool levelAware);

// Per leaf element: active ids of the leaf, then of each ancestor toward
// the root, row-major within each cell. This is the order in which the
// basis evaluation appends shape values.
std::vector<std::vector<DofIndex>>
elementLocationMaps(const std::vector<LocationMatrix>& matrices,
                    const HierarchicalMesh& mesh);

} // namespace hpcart
