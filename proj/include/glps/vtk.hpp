#ifndef GLPS_VTK_HPP
#define GLPS_VTK_HPP

#include "glps/space.hpp"

#include <string>

namespace glps
{
    /// Legacy ASCII VTK unstructured grid with triangle cells.
    void write_vtk_mesh(const std::string &path, const Mesh &mesh);

    /// Mesh plus the function: P1 as point data, CR as cell data (cell means).
    void write_vtk(const std::string &path, const FEFunction &u, const std::string &name = "u_h");
}

#endif
