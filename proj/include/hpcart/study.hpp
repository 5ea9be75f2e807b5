#pragma once

#include "hpcart/io.hpp"
#include "hpcart/masks.hpp"
#include "hpcart/problems.hpp"

namespace hpcart
{

struct CornerStudyConfig
{
    std::size_t dim = 2;
    std::size_t maxDepth = 4;
    Grading grading = Grading::Uniform;
    SpaceType space = SpaceType::Tensor;
    double tolerance = 1e-10;
    int threads = 0;
    std::string vtuDirectory; // empty: no export
};

// One row per refinement depth r = 1..maxDepth: mesh graded toward the
// origin with r(2^d - 1) + 1 leaves, degree r+1 (uniform) or linearly
// decreasing with level, assembled, constrained, solved, measured.
std::vector<StudyRecord> runCornerStudy(const CornerStudyConfig& config);

/// Marks, levels times, the leaves within the given radius of the point.
void refineTowardPoint(HierarchicalMesh& mesh,
                       std::span<const double> point,
                       std::size_t levels,
                       double radius);

struct TransientStudyConfig
{
    TransientProblem problem;
    std::size_t steps = 16;
    double theta = 0.5;
    std::size_t refinementDepth = 3;
    std::size_t degree = 4;
    double refinementRadius = 0.35;
    SpaceType space = SpaceType::Tensor;
    double tolerance = 1e-10;
    int threads = 0;
    bool remesh = true; // rebuild the grid toward the source each step
    std::string vtuDirectory;
};

struct TransientStudyResult
{
    std::vector<StudyRecord> records; // one per step
    double spaceTimeError = 0.0; // trapezoidal combination of per-step L2 errors
};

// Marches the theta scheme against the moving-source problem with
// per-step remeshing toward the source center; Dirichlet data on all
// faces but the top one comes from the reference solution.
TransientStudyResult runTransientStudy(const TransientStudyConfig& config);

} // namespace hpcart
