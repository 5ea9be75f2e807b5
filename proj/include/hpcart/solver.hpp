#pragma once

#include "hpcart/assembly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hpcart
{

struct SolveReport
{
    std::vector<double> x;
    std::size_t iterations = 0;
    double criterion = 0.0; // sqrt(r' inv(D) r) at exit
};

class ConvergenceError : public std::runtime_error
{
public:
    ConvergenceError(std::string message, SolveReport report) :
        std::runtime_error(std::move(message)), report(std::move(report))
    { }

    SolveReport report;
};

// Jacobi-preconditioned conjugate gradients. Converged when
// sqrt(r' inv(D) r) < tolerance; throws ConvergenceError (carrying the
// last iterate) if maxIterations is exhausted. threads > 1 parallelizes
// the matrix-vector products.
SolveReport cgJacobi(const SparseMatrixCSR& matrix,
                     std::span<const double> rhs,
                     double tolerance = 1e-10,
                     std::size_t maxIterations = 10000,
                     std::span<const double> initialGuess = {},
                     int threads = 0);

} // namespace hpcart
