#include "hpcart/masks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hpcart
{

namespace
{

std::uint8_t logicalAnd(std::uint8_t a, std::uint8_t b) { return a && b; }
std::uint8_t logicalOr(std::uint8_t a, std::uint8_t b) { return a || b; }

Shape maskShape(std::span<const std::size_t> degrees)
{
    Shape shape(degrees.size());
    for(std::size_t a = 0; a < degrees.size(); ++a)
    {
        if(degrees[a] < 1)
            throw std::invalid_argument("mask: polynomial degree must be >= 1");
        shape[a] = degrees[a] + 1;
    }
    return shape;
}

} // namespace

TensorMask fullMask(std::span<const std::size_t> degrees)
{
    return TensorMask(maskShape(degrees), 1);
}

TensorMask initialTrunkMask(std::span<const std::size_t> degrees)
{
    auto shape = maskShape(degrees);
    std::size_t maxDegree = *std::max_element(degrees.begin(), degrees.end());

    TensorMask mask(shape, 0);

    forEachIndex(shape, [&](std::span<const std::size_t> alpha)
    {
        std::size_t sum = std::accumulate(alpha.begin(), alpha.end(), std::size_t{0});
        if(sum <= maxDegree) mask[alpha] = 1;
    });

    // Pair the nodal modes: slice 1 per axis takes over slice 0
    for(std::size_t a = 0; a < shape.size(); ++a)
    {
        forEachIndex(removeEntry(shape, a), [&](std::span<const std::size_t> in)
        {
            mask[insertEntry(in, a, 1)] = mask[insertEntry(in, a, 0)];
        });
    }

    return mask;
}

void deactivateSlice(TensorMask& mask, std::size_t axis, std::size_t f)
{
    if(mask.shape()[axis] <= f) return;

    forEachIndex(removeEntry(mask.shape(), axis), [&](std::span<const std::size_t> in)
    {
        mask[insertEntry(in, axis, f)] = 0;
    });
}

std::vector<TensorMask> createPfemMasks(const HierarchicalMesh& mesh,
                                        const std::vector<std::vector<std::size_t>>& degrees,
                                        DegreeStrategy strategy)
{
    for(CellIndex i = 0; i < mesh.cellCount(); ++i)
        if(mesh.level[i] != 0)
            throw std::invalid_argument("createPfemMasks: mesh must be single-level");

    if(degrees.size() != mesh.cellCount())
        throw std::invalid_argument("createPfemMasks: one degree tuple per element required");

    std::vector<TensorMask> masks;
    masks.reserve(mesh.cellCount());
    for(const auto& p : degrees)
        masks.push_back(fullMask(p));

    auto op = strategy == DegreeStrategy::MinDegree ? logicalAnd : logicalOr;

    for(std::size_t it = 0; it + 1 < mesh.dim; ++it)
        operateOnInterfaces(masks, mesh, op, std::uint8_t{0}, false);

    return masks;
}

std::vector<TensorMask> createMlhpMasks(const HierarchicalMesh& mesh,
                                        const std::vector<std::vector<std::size_t>>& leafDegrees,
                                        SpaceType space)
{
    if(leafDegrees.size() != mesh.leafCount())
        throw std::invalid_argument("createMlhpMasks: one degree tuple per leaf required");

    std::size_t d = mesh.dim;
    std::vector<TensorMask> masks(mesh.cellCount());

    // Step 1: leaves full or trunk, non-leaves empty
    for(CellIndex i = 0; i < mesh.cellCount(); ++i)
    {
        if(mesh.isLeaf[i])
        {
            const auto& p = leafDegrees[mesh.leafIndex[i]];
            if(p.size() != d)
                throw std::invalid_argument("createMlhpMasks: degree tuple has wrong dimension");

            masks[i] = space == SpaceType::Trunk ? initialTrunkMask(p) : fullMask(p);
        }
        else
        {
            masks[i] = TensorMask(Shape(d, 0));
        }
    }

    // Step 2: activate matching entries across same-level interfaces
    for(std::size_t it = 0; it < d; ++it)
        operateOnInterfaces(masks, mesh, logicalOr, std::uint8_t{0}, true);

    // Step 3: homogeneous Dirichlet on hanging interfaces
    for(std::size_t a = 0; a < d; ++a)
        for(std::size_t f = 0; f < 2; ++f)
            for(CellIndex i = 0; i < mesh.cellCount(); ++i)
            {
                CellIndex na = mesh.neighbor(i, a, f);
                if(na != NO_CELL && mesh.level[na] != mesh.level[i])
                    deactivateSlice(masks[i], a, f);
            }

    // Step 4: propagate the deactivations across same-level interfaces
    for(std::size_t it = 0; it + 1 < d; ++it)
        operateOnInterfaces(masks, mesh, logicalAnd, std::uint8_t{0}, true);

    return masks;
}

} // namespace hpcart
