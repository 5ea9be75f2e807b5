#pragma once

#include "hpcart/mesh.hpp"
#include "hpcart/ndarray.hpp"

#include <vector>

namespace hpcart
{

// Boolean activation state of the tensor-product shape functions of one
// cell. Indices outside the shape are implicitly inactive; an all-zero
// shape is the empty mask.
using TensorMask = NdArray<std::uint8_t>;

enum class DegreeStrategy
{
    MinDegree, // resolve interface mismatches with logical and
    MaxDegree  // resolve interface mismatches with logical or
};

enum class SpaceType
{
    Tensor,
    Trunk
};

/// Full tensor-product mask of shape p + 1 per axis.
TensorMask fullMask(std::span<const std::size_t> degrees);

// Trunk-space initial mask: activates indices with sum(alpha) <= max(p),
// then overwrites the second slice per axis with the first so a nodal
// pair is never split.
TensorMask initialTrunkMask(std::span<const std::size_t> degrees);

// One sweep over all axes and cells, applying op across each cell's
// second-face interface. With levelAware set, only same-level interfaces
// are visited.
template<typename T, typename Op>
void operateOnInterfaces(std::vector<NdArray<T>>& arrays, const HierarchicalMesh& mesh,
                         Op op, T noValue, bool levelAware)
{
    for(std::size_t a = 0; a < mesh.dim; ++a)
    {
        for(CellIndex i = 0; i < mesh.cellCount(); ++i)
        {
            CellIndex na = mesh.neighbor(i, a, 1);

            if(na == NO_CELL) continue;
            if(levelAware && mesh.level[i] != mesh.level[na]) continue;

            operateOnInterface(arrays[i], arrays[na], a, op, noValue);
        }
    }
}

/// Sets all entries of slice (axis, f) to false within the current shape.
void deactivateSlice(TensorMask& mask, std::size_t axis, std::size_t f);

// Compatible masks for a single-level mesh: full activation per element,
// then d - 1 interface sweeps with the chosen strategy.
std::vector<TensorMask> createPfemMasks(const HierarchicalMesh& mesh,
                                        const std::vector<std::vector<std::size_t>>& degrees,
                                        DegreeStrategy strategy);

// Multi-level masks in four steps: initialize leaves (full or trunk) and
// non-leaves empty; d or-sweeps over same-level interfaces; deactivate
// hanging-interface slices; d - 1 and-sweeps. Degrees are per leaf in
// leaf-index order.
std::vector<TensorMask> createMlhpMasks(const HierarchicalMesh& mesh,
                                        const std::vector<std::vector<std::size_t>>& leafDegrees,
                                        SpaceType space);

} // namespace hpcart
