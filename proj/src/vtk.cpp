#include "glps/vtk.hpp"

#include <cstdio>
#include <fstream>

namespace glps
{
    namespace
    {
        std::ofstream open(const std::string &path)
        {
            std::ofstream out(path);
            if(!out)
                throw Error("cannot write '" + path + "'");
            return out;
        }

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        void write_geometry(std::ofstream &out, const Mesh &mesh)
        {
            out << "# vtk DataFile Version 3.0\n"
                << "glps triangulation\n"
                << "ASCII\n"
                << "DATASET UNSTRUCTURED_GRID\n"
                << "POINTS " << mesh.numVertices() << " double\n";
            for(const auto &p : mesh.vertices)
                out << num(p.x()) << ' ' << num(p.y()) << " 0\n";
            out << "CELLS " << mesh.numCells() << ' ' << 4 * mesh.numCells() << '\n';
            for(const auto &t : mesh.triangles)
                out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
            out << "CELL_TYPES " << mesh.numCells() << '\n';
            for(Index k = 0; k < mesh.numCells(); ++k)
                out << "5\n";
        }
    }

    void write_vtk_mesh(const std::string &path, const Mesh &mesh)
    {
        auto out = open(path);
        write_geometry(out, mesh);
    }

    void write_vtk(const std::string &path, const FEFunction &u, const std::string &name)
    {
        const Mesh &mesh = u.space->mesh();
        auto out = open(path);
        write_geometry(out, mesh);
        if(u.space->kind() == SpaceKind::ConformingP1)
        {
            out << "POINT_DATA " << mesh.numVertices() << '\n';
            out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
            for(Index i = 0; i < mesh.numVertices(); ++i)
                out << num(u.coefficients(i)) << '\n';
        }
        else
        {
            out << "CELL_DATA " << mesh.numCells() << '\n';
            out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
            for(Index k = 0; k < mesh.numCells(); ++k)
                out << num(u.cellMean(k)) << '\n';
        }
    }
}
