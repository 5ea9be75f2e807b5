#include "hpcart/basis.hpp"
#include "hpcart/polynomials.hpp"

#include <cmath>
#include <stdexcept>

namespace hpcart
{

std::vector<double> evaluateShapes(const HierarchicalMesh& mesh,
                                   const std::vector<TensorMask>& masks,
                                   CellIndex element,
                                   std::span<const double> rIn,
                                   std::span<const int> k)
{
    if(element >= mesh.cellCount() || !mesh.isLeaf[element])
        throw std::invalid_argument("evaluateShapes: element is not a leaf");

    std::size_t d = mesh.dim;
    std::vector<double> r(rIn.begin(), rIn.end());
    std::vector<double> values;

    int sumK = 0;
    for(auto ka : k) sumK += ka;

    std::size_t levelsClimbed = 0;

    for(CellIndex cell = element; cell != NO_CELL; cell = mesh.parent[cell])
    {
        const TensorMask& mask = masks[cell];

        if(mask.size() != 0)
        {
            std::vector<std::vector<double>> I(d);
            for(std::size_t a = 0; a < d; ++a)
                I[a] = integratedLegendre(r[a], std::max<std::size_t>(mask.shape()[a], 2) - 1, k[a]);

            // Derivatives shrink by 1/2 per level between this cell's
            // frame and the leaf frame
            double scale = std::pow(0.5, static_cast<double>(levelsClimbed) * sumK);

            forEachIndex(mask.shape(), [&](std::span<const std::size_t> alpha)
            {
                if(!mask[alpha]) return;

                double value = scale;
                for(std::size_t a = 0; a < d; ++a)
                    value *= I[a][alpha[a]];

                values.push_back(value);
            });
        }

        // Map coordinates to the parent frame: the child covers the lower
        // half along an axis exactly when its first-face neighbor is
        // missing or belongs to a different parent
        for(std::size_t a = 0; a < d; ++a)
        {
            CellIndex na = mesh.neighbor(cell, a, 0);
            double c = (na == NO_CELL || mesh.parent[na] != mesh.parent[cell]) ? -1.0 : 1.0;
            r[a] = 0.5 * (r[a] + c);
        }

        ++levelsClimbed;
    }

    return values;
}

std::vector<std::size_t> elementMaxDegrees(const HierarchicalMesh& mesh,
                                           const std::vector<TensorMask>& masks,
                                           CellIndex element)
{
    std::size_t d = mesh.dim;
    std::vector<std::size_t> degrees(d, 1);

    for(CellIndex cell = element; cell != NO_CELL; cell = mesh.parent[cell])
        for(std::size_t a = 0; a < d; ++a)
            if(masks[cell].shape()[a] > degrees[a] + 1)
                degrees[a] = masks[cell].shape()[a] - 1;

    return degrees;
}

Basis makeBasis(const HierarchicalMesh& mesh,
                const std::vector<std::vector<std::size_t>>& leafDegrees,
                SpaceType space)
{
    Basis basis;
    basis.mesh = &mesh;
    basis.masks = createMlhpMasks(mesh, leafDegrees, space);

    auto [matrices, rawIds] = initializeGlobalIndices(basis.masks);
    basis.matrices = std::move(matrices);
    basis.nDofs = connectAndCompress(basis.matrices, mesh, rawIds, true);
    basis.locationMaps = elementLocationMaps(basis.matrices, mesh);

    return basis;
}

double evaluateSolution(const Basis& basis,
                        std::span<const double> coefficients,
                        CellIndex element,
                        std::span<const double> r,
                        std::span<const int> k)
{
    if(coefficients.size() != basis.nDofs)
        throw std::invalid_argument("evaluateSolution: coefficient vector length mismatch");

    const HierarchicalMesh& mesh = *basis.mesh;
    auto values = evaluateShapes(mesh, basis.masks, element, r, k);
    const auto& map = basis.locationMaps[mesh.leafIndex[element]];

    double result = 0.0;
    for(std::size_t j = 0; j < values.size(); ++j)
        result += values[j] * coefficients[map[j]];

    // Reference-to-global chain rule for the differentiated axes
    for(std::size_t a = 0; a < mesh.dim; ++a)
        if(k[a] != 0) result /= mesh.halfExtent(element, a);

    return result;
}

void solutionValueGradient(const Basis& basis,
                           std::span<const double> coefficients,
                           CellIndex element,
                           std::span<const double> r,
                           double& value,
                           std::span<double> gradient)
{
    std::size_t d = basis.mesh->dim;
    std::vector<int> k(d, 0);

    value = evaluateSolution(basis, coefficients, element, r, k);

    for(std::size_t a = 0; a < d; ++a)
    {
        k[a] = 1;
        gradient[a] = evaluateSolution(basis, coefficients, element, r, k);
        k[a] = 0;
    }
}

} // namespace hpcart
