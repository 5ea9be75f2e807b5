#include "hpcart/dofmap.hpp"

namespace hpcart
{

std::pair<std::vector<LocationMatrix>, std::size_t>
initializeGlobalIndices(const std::vector<TensorMask>& masks)
{
    std::vector<LocationMatrix> matrices;
    matrices.reserve(masks.size());

    DofIndex nextId = 0;

    for(const auto& mask : masks)
    {
        LocationMatrix matrix(mask.shape(), NO_DOF);

        for(std::size_t i = 0; i < mask.size(); ++i)
            if(mask.flat(i)) matrix.flat(i) = nextId++;

        matrices.push_back(std::move(matrix));
    }

    return { std::move(matrices), nextId };
}

std::size_t connectAndCompress(std::vector<LocationMatrix>& matrices,
                               const HierarchicalMesh& mesh,
                               std::size_t rawIdCount,
                               bool levelAware)
{
    auto returnFirstIndex = [](DofIndex a, DofIndex) { return a; };

    operateOnInterfaces(matrices, mesh, returnFirstIndex, NO_DOF, levelAware);

    // Remove ids left without contribution, preserving relative order
    std::vector<std::uint8_t> exists(rawIdCount, 0);

    for(const auto& matrix : matrices)
        for(std::size_t i = 0; i < matrix.size(); ++i)
            if(matrix.flat(i) != NO_DOF) exists[matrix.flat(i)] = 1;

    std::vector<DofIndex> map(rawIdCount, NO_DOF);
    DofIndex compressed = 0;

    for(std::size_t i = 0; i < rawIdCount; ++i)
        if(exists[i]) map[i] = compressed++;

    for(auto& matrix : matrices)
        for(std::size_t i = 0; i < matrix.size(); ++i)
            if(matrix.flat(i) != NO_DOF) matrix.flat(i) = map[matrix.flat(i)];

    return compressed;
}

std::vector<std::vector<DofIndex>>
elementLocationMaps(const std::vector<LocationMatrix>& matrices,
                    const HierarchicalMesh& mesh)
{
    std::vector<std::vector<DofIndex>> maps;
    maps.reserve(mesh.leafCount());

    for(CellIndex leaf : mesh.leafCells)
    {
        std::vector<DofIndex> map;

        for(CellIndex cell = leaf; cell != NO_CELL; cell = mesh.parent[cell])
        {
            const auto& matrix = matrices[cell];
            for(std::size_t i = 0; i < matrix.size(); ++i)
                if(matrix.flat(i) != NO_DOF) map.push_back(matrix.flat(i));
        }

        maps.push_back(std::move(map));
    }

    return maps;
}

} // namespace hpcart
