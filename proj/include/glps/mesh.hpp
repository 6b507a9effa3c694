#ifndef GLPS_MESH_HPP
#define GLPS_MESH_HPP

#include "glps/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace glps
{
    /// Axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
    struct Rectangle
    {
        double xmin = 0.0;
        double xmax = 1.0;
        double ymin = 0.0;
        double ymax = 1.0;

        double width() const { return xmax - xmin; }
        double height() const { return ymax - ymin; }
        double area() const { return width() * height(); }
    };

    enum class MeshPattern
    {
        /// Each square split into two triangles along the (xmin,ymin)-(xmax,ymax) diagonal.
        Right,
        /// Each square split into four triangles meeting at its center.
        Crisscross
    };

    enum class EdgeKind
    {
        Interior,
        Boundary
    };

    /// Mesh edge. The vertex pair (a, b) is ordered counterclockwise with
    /// respect to plusCell, so normal is the outward normal of plusCell: it
    /// points from K+ into K- for interior edges and out of the domain on the
    /// boundary.
    struct Edge
    {
        std::array<Index, 2> vertices;
        double length = 0.0;
        Point normal;
        Index plusCell = -1;
        std::optional<Index> minusCell;

        EdgeKind kind() const { return minusCell ? EdgeKind::Interior : EdgeKind::Boundary; }
        bool isBoundary() const { return !minusCell.has_value(); }
    };

    /// Conforming triangulation of a rectangle. Immutable once built.
    struct Mesh
    {
        Rectangle domain;
        std::vector<Point> vertices;
        /// Counterclockwise vertex triples.
        std::vector<std::array<Index, 3>> triangles;
        std::vector<Edge> edges;
        /// cellEdges[K][i] is the edge opposite local vertex i of triangle K.
        std::vector<std::array<Index, 3>> cellEdges;
        /// Longest edge of each triangle.
        std::vector<double> cellDiameters;
        std::vector<double> cellAreas;

        Index numVertices() const { return static_cast<Index>(vertices.size()); }
        Index numCells() const { return static_cast<Index>(triangles.size()); }
        Index numEdges() const { return static_cast<Index>(edges.size()); }

        /// Mesh parameter h = max_K h_K.
        double meshSize() const;

        Point vertex(Index cell, int local) const { return vertices[triangles[cell][local]]; }
        Point centroid(Index cell) const;
        Point midpoint(Index edge) const;
    };

    struct VertexPatch
    {
        Index vertex = -1;
        std::vector<Index> cells;
        double measure = 0.0;
        /// Arithmetic mean of member cell diameters.
        double localSize = 0.0;
    };

    struct EdgePatch
    {
        Index edge = -1;
        std::vector<Index> cells;
        double measure = 0.0;
    };

    enum class BoundaryFlow
    {
        Inflow,
        Outflow,
        Characteristic
    };

    using VelocityField = std::function<Point(const Point &)>;

    /// Structured triangulation with n subdivisions per axis.
    Mesh build_structured_mesh(const Rectangle &domain, Index n, MeshPattern pattern);

    /// Mesh from counterclockwise triangles; edges, normals and cell metrics
    /// are derived. domain is recorded as the bounding box.
    Mesh mesh_from_triangles(const Rectangle &domain, std::vector<Point> vertices,
                             std::vector<std::array<Index, 3>> triangles);

    std::vector<VertexPatch> vertex_patches(const Mesh &mesh);

    std::vector<EdgePatch> edge_patches(const Mesh &mesh);

    /// Sign of b(midpoint).n on each boundary edge; |b.n| <= tolerance counts
    /// as characteristic. Returned in the order of boundary_edges(mesh).
    std::vector<BoundaryFlow> classify_boundary_edges(const Mesh &mesh,
                                                      const VelocityField &b,
                                                      double tolerance = 1e-12);

    /// Indices of boundary edges in increasing order.
    std::vector<Index> boundary_edges(const Mesh &mesh);
}

#endif
