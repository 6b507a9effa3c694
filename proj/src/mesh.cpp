#include "glps/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace glps
{
    double Mesh::meshSize() const
    {
        return cellDiameters.empty() ? 0.0 : *std::max_element(cellDiameters.begin(), cellDiameters.end());
    }

    Point Mesh::centroid(Index cell) const
    {
        return (vertex(cell, 0) + vertex(cell, 1) + vertex(cell, 2)) / 3.0;
    }

    Point Mesh::midpoint(Index edge) const
    {
        const auto &e = edges[edge];
        return 0.5 * (vertices[e.vertices[0]] + vertices[e.vertices[1]]);
    }

    namespace
    {
        double signed_area(const Point &a, const Point &b, const Point &c)
        {
            return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
        }

        void build_edges(Mesh &mesh)
        {
            const Index nv = mesh.numVertices();
            std::unordered_map<Index, Index> lookup;
            lookup.reserve(static_cast<std::size_t>(3 * mesh.numCells()));
            mesh.cellEdges.resize(mesh.triangles.size());

            for(Index k = 0; k < mesh.numCells(); ++k)
            {
                const auto &tri = mesh.triangles[k];
                for(int i = 0; i < 3; ++i)
                {
                    const Index a = tri[(i + 1) % 3];
                    const Index b = tri[(i + 2) % 3];
                    const Index key = std::min(a, b) * nv + std::max(a, b);
                    auto it = lookup.find(key);
                    if(it == lookup.end())
                    {
                        Edge e;
                        e.vertices = {a, b};
                        const Point d = mesh.vertices[b] - mesh.vertices[a];
                        e.length = d.norm();
                        e.normal = Point(d.y(), -d.x()) / e.length;
                        e.plusCell = k;
                        const Index id = mesh.numEdges();
                        mesh.edges.push_back(e);
                        lookup.emplace(key, id);
                        mesh.cellEdges[k][i] = id;
                    }
                    else
                    {
                        auto &e = mesh.edges[it->second];
                        if(e.minusCell)
                            throw Error("build_edges: edge shared by more than two triangles");
                        e.minusCell = k;
                        mesh.cellEdges[k][i] = it->second;
                    }
                }
            }
        }
    }

    Mesh build_structured_mesh(const Rectangle &domain, Index n, MeshPattern pattern)
    {
        if(n < 1)
            throw Error("build_structured_mesh: n must be >= 1");
        if(!(domain.width() > 0.0) || !(domain.height() > 0.0))
            throw Error("build_structured_mesh: domain must have positive width and height");

        std::vector<Point> vertices;
        std::vector<std::array<Index, 3>> triangles;

        const auto grid = [n](Index i, Index j) { return j * (n + 1) + i; };
        vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1) + n * n));
        for(Index j = 0; j <= n; ++j)
            for(Index i = 0; i <= n; ++i)
                vertices.emplace_back(domain.xmin + domain.width() * static_cast<double>(i) / static_cast<double>(n),
                                      domain.ymin + domain.height() * static_cast<double>(j) / static_cast<double>(n));

        for(Index j = 0; j < n; ++j)
        {
            for(Index i = 0; i < n; ++i)
            {
                const Index p00 = grid(i, j);
                const Index p10 = grid(i + 1, j);
                const Index p11 = grid(i + 1, j + 1);
                const Index p01 = grid(i, j + 1);
                if(pattern == MeshPattern::Right)
                {
                    triangles.push_back({p00, p10, p11});
                    triangles.push_back({p00, p11, p01});
                }
                else
                {
                    const Index c = static_cast<Index>(vertices.size());
                    vertices.push_back(0.25 * (vertices[p00] + vertices[p10] + vertices[p11] + vertices[p01]));
                    triangles.push_back({p00, p10, c});
                    triangles.push_back({p10, p11, c});
                    triangles.push_back({p11, p01, c});
                    triangles.push_back({p01, p00, c});
                }
            }
        }

        return mesh_from_triangles(domain, std::move(vertices), std::move(triangles));
    }

    Mesh mesh_from_triangles(const Rectangle &domain, std::vector<Point> vertices,
                             std::vector<std::array<Index, 3>> triangles)
    {
        Mesh mesh;
        mesh.domain = domain;
        mesh.vertices = std::move(vertices);
        mesh.triangles = std::move(triangles);
        mesh.cellAreas.reserve(mesh.triangles.size());
        mesh.cellDiameters.reserve(mesh.triangles.size());
        for(Index k = 0; k < mesh.numCells(); ++k)
        {
            for(Index v : mesh.triangles[k])
                if(v < 0 || v >= mesh.numVertices())
                    throw Error("mesh_from_triangles: vertex index out of range");
            const Point a = mesh.vertex(k, 0), b = mesh.vertex(k, 1), c = mesh.vertex(k, 2);
            const double area = signed_area(a, b, c);
            if(!(area > 0.0))
                throw Error("mesh_from_triangles: degenerate or clockwise triangle");
            mesh.cellAreas.push_back(area);
            mesh.cellDiameters.push_back(std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()}));
        }

        build_edges(mesh);
        return mesh;
    }

    std::vector<VertexPatch> vertex_patches(const Mesh &mesh)
    {
        std::vector<VertexPatch> patches(static_cast<std::size_t>(mesh.numVertices()));
        for(Index v = 0; v < mesh.numVertices(); ++v)
            patches[v].vertex = v;
        for(Index k = 0; k < mesh.numCells(); ++k)
            for(Index v : mesh.triangles[k])
                patches[v].cells.push_back(k);

        for(auto &p : patches)
        {
            double sizeSum = 0.0;
            for(Index k : p.cells)
            {
                p.measure += mesh.cellAreas[k];
                sizeSum += mesh.cellDiameters[k];
            }
            if(!p.cells.empty())
                p.localSize = sizeSum / static_cast<double>(p.cells.size());
        }
        return patches;
    }

    std::vector<EdgePatch> edge_patches(const Mesh &mesh)
    {
        std::vector<EdgePatch> patches;
        patches.reserve(mesh.edges.size());
        for(Index e = 0; e < mesh.numEdges(); ++e)
        {
            const auto &edge = mesh.edges[e];
            EdgePatch p;
            p.edge = e;
            p.cells.push_back(edge.plusCell);
            p.measure = mesh.cellAreas[edge.plusCell];
            if(edge.minusCell)
            {
                p.cells.push_back(*edge.minusCell);
                p.measure += mesh.cellAreas[*edge.minusCell];
            }
            patches.push_back(std::move(p));
        }
        return patches;
    }

    std::vector<Index> boundary_edges(const Mesh &mesh)
    {
        std::vector<Index> result;
        for(Index e = 0; e < mesh.numEdges(); ++e)
            if(mesh.edges[e].isBoundary())
                result.push_back(e);
        return result;
    }

    std::vector<BoundaryFlow> classify_boundary_edges(const Mesh &mesh,
                                                      const VelocityField &b,
                                                      double tolerance)
    {
        std::vector<BoundaryFlow> flags;
        for(Index e : boundary_edges(mesh))
        {
            const double bn = b(mesh.midpoint(e)).dot(mesh.edges[e].normal);
            if(std::abs(bn) <= tolerance)
                flags.push_back(BoundaryFlow::Characteristic);
            else
                flags.push_back(bn < 0.0 ? BoundaryFlow::Inflow : BoundaryFlow::Outflow);
        }
        return flags;
    }
}
