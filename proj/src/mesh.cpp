#include "hpcart/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hpcart
{

namespace
{

void rebuildLeafLists(HierarchicalMesh& mesh)
{
    mesh.leafCells.clear();
    mesh.leafIndex.assign(mesh.cellCount(), NO_CELL);

    for(CellIndex i = 0; i < mesh.cellCount(); ++i)
    {
        if(mesh.isLeaf[i])
        {
            mesh.leafIndex[i] = static_cast<CellIndex>(mesh.leafCells.size());
            mesh.leafCells.push_back(i);
        }
    }
}

// Child offset within the contiguous 2^d block for a binary tuple given
// as bits; axis 0 is the slowest.
std::size_t childOffset(std::span<const std::size_t> tuple)
{
    std::size_t offset = 0;
    for(auto b : tuple) offset = offset * 2 + b;
    return offset;
}

// Descends from cell j towards the face (a, f) of cell i until reaching
// either a cell on i's level or a leaf. j must cover that face region.
CellIndex resolveNeighbor(const HierarchicalMesh& mesh, CellIndex i,
                          std::size_t a, std::size_t f, CellIndex j)
{
    if(j == NO_CELL) return NO_CELL;

    std::size_t d = mesh.dim;

    // Probe point: center of i's face (a, f), nudged into j's side
    std::vector<double> probe(d);
    for(std::size_t b = 0; b < d; ++b)
        probe[b] = 0.5 * (mesh.boxLo[i * d + b] + mesh.boxHi[i * d + b]);

    double nudge = 0.5 * mesh.halfExtent(i, a);
    probe[a] = (f == 1) ? mesh.boxHi[i * d + a] + nudge
                        : mesh.boxLo[i * d + a] - nudge;

    while(!mesh.isLeaf[j] && mesh.level[j] < mesh.level[i])
    {
        MultiIndex tuple(d);
        for(std::size_t b = 0; b < d; ++b)
        {
            double mid = 0.5 * (mesh.boxLo[j * d + b] + mesh.boxHi[j * d + b]);
            tuple[b] = probe[b] > mid ? 1 : 0;
        }
        j = mesh.firstChild[j] + static_cast<CellIndex>(childOffset(tuple));
    }

    return j;
}

} // namespace

HierarchicalMesh createBaseGrid(std::vector<std::array<double, 2>> bounds,
                                std::vector<std::size_t> baseShape)
{
    if(bounds.empty() || bounds.size() != baseShape.size())
        throw std::invalid_argument("createBaseGrid: inconsistent bounds/shape");

    for(std::size_t a = 0; a < bounds.size(); ++a)
    {
        if(bounds[a][1] <= bounds[a][0])
            throw std::invalid_argument("createBaseGrid: non-positive extent");
        if(baseShape[a] == 0)
            throw std::invalid_argument("createBaseGrid: zero cells on an axis");
    }

    HierarchicalMesh mesh;
    mesh.dim = bounds.size();
    mesh.bounds = std::move(bounds);
    mesh.baseShape = std::move(baseShape);

    std::size_t d = mesh.dim;
    std::size_t n = product(mesh.baseShape);

    mesh.neighbors.assign(n * d * 2, NO_CELL);
    mesh.parent.assign(n, NO_CELL);
    mesh.firstChild.assign(n, NO_CELL);
    mesh.level.assign(n, 0);
    mesh.isLeaf.assign(n, 1);
    mesh.boxLo.resize(n * d);
    mesh.boxHi.resize(n * d);

    // Strides for lexicographic ids, axis 0 slowest
    std::vector<std::size_t> stride(d, 1);
    for(std::size_t a = d - 1; a > 0; --a)
        stride[a - 1] = stride[a] * mesh.baseShape[a];

    forEachIndex(mesh.baseShape, [&](std::span<const std::size_t> index)
    {
        std::size_t id = 0;
        for(std::size_t a = 0; a < d; ++a) id += index[a] * stride[a];

        for(std::size_t a = 0; a < d; ++a)
        {
            double h = (mesh.bounds[a][1] - mesh.bounds[a][0]) / mesh.baseShape[a];
            mesh.boxLo[id * d + a] = mesh.bounds[a][0] + index[a] * h;
            mesh.boxHi[id * d + a] = mesh.bounds[a][0] + (index[a] + 1) * h;

            if(index[a] > 0)
                mesh.neighbors[(id * d + a) * 2 + 0] = static_cast<CellIndex>(id - stride[a]);
            if(index[a] + 1 < mesh.baseShape[a])
                mesh.neighbors[(id * d + a) * 2 + 1] = static_cast<CellIndex>(id + stride[a]);
        }
    });

    rebuildLeafLists(mesh);
    return mesh;
}

HierarchicalMesh refine(const HierarchicalMesh& mesh, std::span<const CellIndex> markedIn)
{
    std::set<CellIndex> marked(markedIn.begin(), markedIn.end());

    for(auto m : marked)
    {
        if(m >= mesh.cellCount())
            throw std::invalid_argument("refine: unknown cell id");
        if(!mesh.isLeaf[m])
            throw std::invalid_argument("refine: marked cell is not a leaf");
    }

    HierarchicalMesh result = mesh;
    if(marked.empty()) return result;

    std::size_t d = result.dim;
    Shape childShape(d, 2);

    std::vector<std::uint8_t> refinedNow(mesh.cellCount(), 0);

    for(auto m : marked) // ascending: std::set iteration order
    {
        result.isLeaf[m] = 0;
        result.firstChild[m] = static_cast<CellIndex>(result.cellCount());
        refinedNow[m] = 1;

        forEachIndex(childShape, [&](std::span<const std::size_t> tuple)
        {
            result.parent.push_back(m);
            result.firstChild.push_back(NO_CELL);
            result.level.push_back(static_cast<std::uint16_t>(result.level[m] + 1));
            result.isLeaf.push_back(1);
            result.neighbors.insert(result.neighbors.end(), d * 2, NO_CELL);

            for(std::size_t a = 0; a < d; ++a)
            {
                double lo = result.boxLo[m * d + a];
                double hi = result.boxHi[m * d + a];
                double mid = 0.5 * (lo + hi);
                result.boxLo.push_back(tuple[a] == 0 ? lo : mid);
                result.boxHi.push_back(tuple[a] == 0 ? mid : hi);
            }
        });
    }

    // Child neighbors: sibling across internal faces, otherwise descend
    // from the parent's neighbor to the matching cell or coarser leaf.
    for(auto m : marked)
    {
        CellIndex first = result.firstChild[m];

        forEachIndex(childShape, [&](std::span<const std::size_t> tuple)
        {
            CellIndex c = first + static_cast<CellIndex>(childOffset(tuple));

            for(std::size_t a = 0; a < d; ++a)
            {
                std::size_t bit = std::size_t{1} << (d - 1 - a);

                for(std::size_t f = 0; f < 2; ++f)
                {
                    CellIndex& entry = result.neighbors[(c * d + a) * 2 + f];

                    if(tuple[a] != f)
                    {
                        entry = first + static_cast<CellIndex>(childOffset(tuple) ^ bit);
                    }
                    else
                    {
                        entry = resolveNeighbor(result, c, a, f, mesh.neighbor(m, a, f));
                    }
                }
            }
        });
    }

    // Internal-boundary entries of pre-existing cells that pointed at a
    // leaf refined in this call now resolve to the new covering cell.
    for(CellIndex i = 0; i < mesh.cellCount(); ++i)
    {
        for(std::size_t a = 0; a < d; ++a)
        {
            for(std::size_t f = 0; f < 2; ++f)
            {
                CellIndex j = result.neighbors[(i * d + a) * 2 + f];

                if(j != NO_CELL && j < refinedNow.size() && refinedNow[j] &&
                   result.level[j] < result.level[i])
                {
                    result.neighbors[(i * d + a) * 2 + f] = resolveNeighbor(result, i, a, f, j);
                }
            }
        }
    }

    rebuildLeafLists(result);
    return result;
}

LeafLocation findLeaf(const HierarchicalMesh& mesh, std::span<const double> x)
{
    std::size_t d = mesh.dim;

    for(std::size_t a = 0; a < d; ++a)
        if(x[a] < mesh.bounds[a][0] || x[a] > mesh.bounds[a][1])
            throw std::runtime_error("findLeaf: point outside domain");

    // Containing root cell; exact grid-plane hits go to the lower cell
    std::size_t root = 0;
    std::vector<std::size_t> stride(d, 1);
    for(std::size_t a = d - 1; a > 0; --a)
        stride[a - 1] = stride[a] * mesh.baseShape[a];

    for(std::size_t a = 0; a < d; ++a)
    {
        double t = (x[a] - mesh.bounds[a][0]) / (mesh.bounds[a][1] - mesh.bounds[a][0])
                 * mesh.baseShape[a];
        auto i = static_cast<std::size_t>(t);
        if(i > 0 && (static_cast<double>(i) == t || i >= mesh.baseShape[a])) --i;
        root += i * stride[a];
    }

    CellIndex cell = static_cast<CellIndex>(root);

    while(!mesh.isLeaf[cell])
    {
        MultiIndex tuple(d);
        for(std::size_t a = 0; a < d; ++a)
        {
            double mid = 0.5 * (mesh.boxLo[cell * d + a] + mesh.boxHi[cell * d + a]);
            tuple[a] = x[a] > mid ? 1 : 0;
        }
        cell = mesh.firstChild[cell] + static_cast<CellIndex>(childOffset(tuple));
    }

    LeafLocation loc;
    loc.leaf = cell;
    loc.local.resize(d);
    mapToLocal(mesh, cell, x, loc.local);
    return loc;
}

namespace
{

void collectPairs(const HierarchicalMesh& a, const HierarchicalMesh& b,
                  CellIndex ca, CellIndex cb, std::vector<IntegrationCellPair>& pairs)
{
    bool la = a.isLeaf[ca];
    bool lb = b.isLeaf[cb];

    if(la && lb)
    {
        const HierarchicalMesh& finer = a.level[ca] >= b.level[cb] ? a : b;
        CellIndex fc = a.level[ca] >= b.level[cb] ? ca : cb;

        IntegrationCellPair pair;
        pair.leafA = ca;
        pair.leafB = cb;
        pair.lo.assign(finer.lo(fc).begin(), finer.lo(fc).end());
        pair.hi.assign(finer.hi(fc).begin(), finer.hi(fc).end());
        pairs.push_back(std::move(pair));
        return;
    }

    std::size_t nc = std::size_t{1} << a.dim;

    if(!la && !lb)
    {
        for(std::size_t c = 0; c < nc; ++c)
            collectPairs(a, b, a.firstChild[ca] + static_cast<CellIndex>(c),
                         b.firstChild[cb] + static_cast<CellIndex>(c), pairs);
    }
    else if(la)
    {
        for(std::size_t c = 0; c < nc; ++c)
            collectPairs(a, b, ca, b.firstChild[cb] + static_cast<CellIndex>(c), pairs);
    }
    else
    {
        for(std::size_t c = 0; c < nc; ++c)
            collectPairs(a, b, a.firstChild[ca] + static_cast<CellIndex>(c), cb, pairs);
    }
}

} // namespace

std::vector<IntegrationCellPair> commonRefinement(const HierarchicalMesh& a,
                                                  const HierarchicalMesh& b)
{
    if(a.dim != b.dim || a.bounds != b.bounds || a.baseShape != b.baseShape)
        throw std::invalid_argument("commonRefinement: mismatched base grids");

    std::vector<IntegrationCellPair> pairs;

    std::size_t roots = product(a.baseShape);
    for(std::size_t r = 0; r < roots; ++r)
        collectPairs(a, b, static_cast<CellIndex>(r), static_cast<CellIndex>(r), pairs);

    return pairs;
}

void mapToGlobal(const HierarchicalMesh& mesh, CellIndex cell,
                 std::span<const double> local, std::span<double> global)
{
    std::size_t d = mesh.dim;
    for(std::size_t a = 0; a < d; ++a)
    {
        double lo = mesh.boxLo[cell * d + a];
        double hi = mesh.boxHi[cell * d + a];
        global[a] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * local[a];
    }
}

void mapToLocal(const HierarchicalMesh& mesh, CellIndex cell,
                std::span<const double> global, std::span<double> local)
{
    std::size_t d = mesh.dim;
    for(std::size_t a = 0; a < d; ++a)
    {
        double lo = mesh.boxLo[cell * d + a];
        double hi = mesh.boxHi[cell * d + a];
        local[a] = (2.0 * global[a] - lo - hi) / (hi - lo);
    }
}

} // namespace hpcart
