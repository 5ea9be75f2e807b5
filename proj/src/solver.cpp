#include "hpcart/solver.hpp"

#include <cmath>

namespace hpcart
{

SolveReport cgJacobi(const SparseMatrixCSR& matrix,
                     std::span<const double> rhs,
                     double tolerance,
                     std::size_t maxIterations,
                     std::span<const double> initialGuess,
                     int threads)
{
    std::size_t n = matrix.rows;

    if(rhs.size() != n)
        throw std::invalid_argument("cgJacobi: right-hand side size mismatch");
    if(!initialGuess.empty() && initialGuess.size() != n)
        throw std::invalid_argument("cgJacobi: initial guess size mismatch");

    std::vector<double> diagonal(n);
    for(std::size_t i = 0; i < n; ++i)
    {
        diagonal[i] = matrix.at(i, static_cast<DofIndex>(i));
        if(!(diagonal[i] > 0.0))
            throw std::invalid_argument("cgJacobi: non-positive diagonal entry");
    }

    SolveReport report;
    report.x.assign(n, 0.0);
    if(!initialGuess.empty())
        report.x.assign(initialGuess.begin(), initialGuess.end());

    std::vector<double> r(n), z(n), p(n), q(n);

    matrix.multiply(report.x, r, threads);
    for(std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];

    double rz = 0.0;
    for(std::size_t i = 0; i < n; ++i)
    {
        z[i] = r[i] / diagonal[i];
        rz += r[i] * z[i];
    }

    report.criterion = std::sqrt(rz);
    if(report.criterion < tolerance) return report;

    p = z;

    for(std::size_t iter = 0; iter < maxIterations; ++iter)
    {
        matrix.multiply(p, q, threads);

        double pq = 0.0;
        for(std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];

        if(!(pq > 0.0))
            throw ConvergenceError("cgJacobi: matrix is not positive definite", report);

        double alpha = rz / pq;
        for(std::size_t i = 0; i < n; ++i)
        {
            report.x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }

        double rzNew = 0.0;
        for(std::size_t i = 0; i < n; ++i)
        {
            z[i] = r[i] / diagonal[i];
            rzNew += r[i] * z[i];
        }

        report.iterations = iter + 1;
        report.criterion = std::sqrt(rzNew);

        if(report.criterion < tolerance) return report;

        double beta = rzNew / rz;
        rz = rzNew;

        for(std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }

    throw ConvergenceError("cgJacobi: no convergence within " +
                           std::to_string(maxIterations) + " iterations", report);
}

} // namespace hpcart
