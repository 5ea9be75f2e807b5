#include "hpcart/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hpcart
{

namespace
{

std::string formatDouble(double v)
{
    char buffer[32];
    auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, result.ptr);
}

const char* csvHeader =
    "study,index,n_dofs,nnz,cg_iters,err_energy,err_l2,"
    "t_mesh_basis_s,t_assembly_s,t_solve_s";

std::vector<std::string> splitCsvLine(const std::string& line)
{
    std::vector<std::string> fields;
    std::size_t begin = 0;

    while(true)
    {
        std::size_t comma = line.find(',', begin);
        fields.push_back(line.substr(begin, comma - begin));
        if(comma == std::string::npos) break;
        begin = comma + 1;
    }

    return fields;
}

template<typename T>
T parseNumber(const std::string& field)
{
    T value{};
    auto result = std::from_chars(field.data(), field.data() + field.size(), value);
    if(result.ec != std::errc{} || result.ptr != field.data() + field.size())
        throw std::runtime_error("readCsv: malformed field '" + field + "'");
    return value;
}

} // namespace

void writeCsv(const std::vector<StudyRecord>& records, std::ostream& out)
{
    out << csvHeader << "\n";

    for(const auto& r : records)
    {
        out << r.study << ',' << r.index << ',' << r.nDofs << ',' << r.nnz << ','
            << r.cgIterations << ',' << formatDouble(r.errEnergy) << ','
            << formatDouble(r.errL2) << ',' << formatDouble(r.tMeshBasis) << ','
            << formatDouble(r.tAssembly) << ',' << formatDouble(r.tSolve) << "\n";
    }
}

void writeCsv(const std::vector<StudyRecord>& records, const std::string& path)
{
    std::ofstream out(path);
    if(!out) throw std::runtime_error("writeCsv: cannot open " + path);
    writeCsv(records, out);
}

std::vector<StudyRecord> readCsv(std::istream& in)
{
    std::string line;
    if(!std::getline(in, line) || line != csvHeader)
        throw std::runtime_error("readCsv: missing or unexpected header");

    std::vector<StudyRecord> records;

    while(std::getline(in, line))
    {
        if(line.empty()) continue;

        auto fields = splitCsvLine(line);
        if(fields.size() != 10)
            throw std::runtime_error("readCsv: expected 10 fields, got " +
                                     std::to_string(fields.size()));

        StudyRecord r;
        r.study = fields[0];
        r.index = parseNumber<std::size_t>(fields[1]);
        r.nDofs = parseNumber<std::size_t>(fields[2]);
        r.nnz = parseNumber<std::size_t>(fields[3]);
        r.cgIterations = parseNumber<std::size_t>(fields[4]);
        r.errEnergy = parseNumber<double>(fields[5]);
        r.errL2 = parseNumber<double>(fields[6]);
        r.tMeshBasis = parseNumber<double>(fields[7]);
        r.tAssembly = parseNumber<double>(fields[8]);
        r.tSolve = parseNumber<double>(fields[9]);

        records.push_back(std::move(r));
    }

    return records;
}

std::vector<StudyRecord> readCsv(const std::string& path)
{
    std::ifstream in(path);
    if(!in) throw std::runtime_error("readCsv: cannot open " + path);
    return readCsv(in);
}

void writeVtu(const Basis& basis,
              std::span<const double> coefficients,
              const std::string& path,
              std::size_t samplesPerP)
{
    const HierarchicalMesh& mesh = *basis.mesh;
    std::size_t d = mesh.dim;

    if(d > 3)
        throw std::invalid_argument("writeVtu: only dimensions 1 to 3 are supported");

    int cellType = (d == 1) ? 3 : (d == 2) ? 9 : 12;
    std::size_t nodesPerCell = std::size_t{1} << d;

    struct Block
    {
        CellIndex element;
        std::size_t s; // lattice cells per axis
        std::size_t pointOffset;
    };

    std::vector<Block> blocks;
    std::size_t nPoints = 0, nCells = 0;

    for(CellIndex element : mesh.leafCells)
    {
        auto degrees = elementMaxDegrees(mesh, basis.masks, element);
        std::size_t maxDegree = *std::max_element(degrees.begin(), degrees.end());
        std::size_t s = std::max<std::size_t>(1, samplesPerP * maxDegree);

        blocks.push_back({ element, s, nPoints });

        std::size_t n = 1, c = 1;
        for(std::size_t a = 0; a < d; ++a)
        {
            n *= s + 1;
            c *= s;
        }
        nPoints += n;
        nCells += c;
    }

    std::ofstream out(path);
    if(!out) throw std::runtime_error("writeVtu: cannot open " + path);

    out << "<?xml version=\"1.0\"?>\n"
        << "<VTKFile type=\"UnstructuredGrid\" version=\"0.1\" byte_order=\"LittleEndian\">\n"
        << "<UnstructuredGrid>\n"
        << "<Piece NumberOfPoints=\"" << nPoints << "\" NumberOfCells=\"" << nCells << "\">\n";

    std::vector<double> r(d), x(d);
    std::vector<int> k(d, 0);

    out << "<Points>\n<DataArray type=\"Float64\" NumberOfComponents=\"3\" format=\"ascii\">\n";
    for(const auto& block : blocks)
    {
        Shape lattice(d, block.s + 1);
        forEachIndex(lattice, [&](std::span<const std::size_t> idx)
        {
            for(std::size_t a = 0; a < d; ++a)
                r[a] = -1.0 + 2.0 * static_cast<double>(idx[a]) / static_cast<double>(block.s);
            mapToGlobal(mesh, block.element, r, x);

            for(std::size_t a = 0; a < 3; ++a)
                out << (a ? " " : "") << formatDouble(a < d ? x[a] : 0.0);
            out << "\n";
        });
    }
    out << "</DataArray>\n</Points>\n";

    out << "<Cells>\n<DataArray type=\"Int64\" Name=\"connectivity\" format=\"ascii\">\n";
    for(const auto& block : blocks)
    {
        // point id of lattice node (row-major, axis 0 slowest)
        auto node = [&](std::span<const std::size_t> idx)
        {
            std::size_t linear = 0;
            for(std::size_t a = 0; a < d; ++a) linear = linear * (block.s + 1) + idx[a];
            return block.pointOffset + linear;
        };

        Shape cells(d, block.s);
        forEachIndex(cells, [&](std::span<const std::size_t> idx)
        {
            MultiIndex corner(idx.begin(), idx.end());
            auto at = [&](std::size_t dx, std::size_t dy, std::size_t dz)
            {
                corner.assign(idx.begin(), idx.end());
                corner[0] += dx;
                if(d > 1) corner[1] += dy;
                if(d > 2) corner[2] += dz;
                return node(corner);
            };

            if(d == 1)
                out << at(0, 0, 0) << " " << at(1, 0, 0);
            else if(d == 2)
                out << at(0, 0, 0) << " " << at(1, 0, 0) << " "
                    << at(1, 1, 0) << " " << at(0, 1, 0);
            else
                out << at(0, 0, 0) << " " << at(1, 0, 0) << " "
                    << at(1, 1, 0) << " " << at(0, 1, 0) << " "
                    << at(0, 0, 1) << " " << at(1, 0, 1) << " "
                    << at(1, 1, 1) << " " << at(0, 1, 1);
            out << "\n";
        });
    }
    out << "</DataArray>\n";

    out << "<DataArray type=\"Int64\" Name=\"offsets\" format=\"ascii\">\n";
    for(std::size_t i = 1; i <= nCells; ++i) out << i * nodesPerCell << "\n";
    out << "</DataArray>\n";

    out << "<DataArray type=\"UInt8\" Name=\"types\" format=\"ascii\">\n";
    for(std::size_t i = 0; i < nCells; ++i) out << cellType << "\n";
    out << "</DataArray>\n</Cells>\n";

    out << "<PointData Scalars=\"u\">\n"
        << "<DataArray type=\"Float64\" Name=\"u\" format=\"ascii\">\n";
    for(const auto& block : blocks)
    {
        Shape lattice(d, block.s + 1);
        forEachIndex(lattice, [&](std::span<const std::size_t> idx)
        {
            for(std::size_t a = 0; a < d; ++a)
                r[a] = -1.0 + 2.0 * static_cast<double>(idx[a]) / static_cast<double>(block.s);

            out << formatDouble(evaluateSolution(basis, coefficients, block.element, r, k)) << "\n";
        });
    }
    out << "</DataArray>\n</PointData>\n";

    out << "</Piece>\n</UnstructuredGrid>\n</VTKFile>\n";
}

} // namespace hpcart
