#pragma once

#include "hpcart/basis.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hpcart
{

struct StudyRecord
{
    std::string study;
    std::size_t index = 0;
    std::size_t nDofs = 0;
    std::size_t nnz = 0;
    std::size_t cgIterations = 0;
    double errEnergy = 0.0;
    double errL2 = 0.0;
    double tMeshBasis = 0.0;
    double tAssembly = 0.0;
    double tSolve = 0.0;

    bool operator==(const StudyRecord&) const = default;
};

// CSV with header study,index,n_dofs,nnz,cg_iters,err_energy,err_l2,
// t_mesh_basis_s,t_assembly_s,t_solve_s. Floats use shortest round-trip
// formatting, so write/parse is lossless.
void writeCsv(const std::vector<StudyRecord>& records, std::ostream& out);
void writeCsv(const std::vector<StudyRecord>& records, const std::string& path);

std::vector<StudyRecord> readCsv(std::istream& in);
std::vector<StudyRecord> readCsv(const std::string& path);

// ASCII XML UnstructuredGrid: per leaf a lattice of (s+1)^d sample
// points with s = samplesPerP * max degree, tessellated into lines,
// quads or hexahedra; point data is the solution value. Requires d <= 3.
void writeVtu(const Basis& basis,
              std::span<const double> coefficients,
              const std::string& path,
              std::size_t samplesPerP = 1);

} // namespace hpcart
