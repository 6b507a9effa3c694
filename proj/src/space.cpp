#include "glps/space.hpp"

namespace glps
{
    FESpace::FESpace(const Mesh &mesh, SpaceKind kind)
        : mesh_(&mesh), kind_(kind)
    {
        ndof_ = kind == SpaceKind::ConformingP1 ? mesh.numVertices() : mesh.numEdges();
        cellDofs_ = kind == SpaceKind::ConformingP1 ? mesh.triangles : mesh.cellEdges;

        gradients_.resize(mesh.triangles.size());
        for(Index k = 0; k < mesh.numCells(); ++k)
        {
            const double twoArea = 2.0 * mesh.cellAreas[k];
            Eigen::Matrix<double, 2, 3> grad;
            for(int i = 0; i < 3; ++i)
            {
                const Point &p1 = mesh.vertex(k, (i + 1) % 3);
                const Point &p2 = mesh.vertex(k, (i + 2) % 3);
                grad.col(i) = Point(p1.y() - p2.y(), p2.x() - p1.x()) / twoArea;
            }
            // CR shape function of the edge opposite vertex i is 1 - 2 l_i.
            if(kind == SpaceKind::CrouzeixRaviart)
                grad *= -2.0;
            gradients_[k] = grad;
        }
    }

    Point FESpace::node(Index dof) const
    {
        return kind_ == SpaceKind::ConformingP1 ? mesh_->vertices[dof] : mesh_->midpoint(dof);
    }

    Eigen::Vector3d FESpace::barycentric(Index cell, const Point &x) const
    {
        // Gradients of barycentrics are the P1 gradients; recover them for CR.
        const double scale = kind_ == SpaceKind::ConformingP1 ? 1.0 : -0.5;
        const Point d = x - mesh_->centroid(cell);
        Eigen::Vector3d lambda;
        for(int i = 0; i < 3; ++i)
            lambda(i) = 1.0 / 3.0 + scale * gradients_[cell].col(i).dot(d);
        return lambda;
    }

    Eigen::Vector3d FESpace::shapeValues(const Eigen::Vector3d &bary) const
    {
        if(kind_ == SpaceKind::ConformingP1)
            return bary;
        return Eigen::Vector3d::Ones() - 2.0 * bary;
    }

    BasisEval eval_basis(const FESpace &space, Index cell, const Point &x)
    {
        const Eigen::Vector3d lambda = space.barycentric(cell, x);
        if(lambda.minCoeff() < -1e-10)
            throw Error("eval_basis: point lies outside the cell");
        return BasisEval{space.shapeValues(lambda), space.gradients(cell)};
    }

    FEFunction::FEFunction(const FESpace &s, Vector c)
        : space(&s), coefficients(std::move(c))
    {
        if(coefficients.size() != s.ndof())
            throw Error("FEFunction: coefficient vector length does not match ndof");
    }

    double FEFunction::value(Index cell, const Point &x) const
    {
        const Eigen::Vector3d phi = space->shapeValues(space->barycentric(cell, x));
        const auto &dofs = space->cellDofs(cell);
        return phi(0) * coefficients(dofs[0]) + phi(1) * coefficients(dofs[1]) + phi(2) * coefficients(dofs[2]);
    }

    Point FEFunction::gradient(Index cell) const
    {
        const auto &dofs = space->cellDofs(cell);
        const Eigen::Vector3d local(coefficients(dofs[0]), coefficients(dofs[1]), coefficients(dofs[2]));
        return space->gradients(cell) * local;
    }

    double FEFunction::cellMean(Index cell) const
    {
        const auto &dofs = space->cellDofs(cell);
        return (coefficients(dofs[0]) + coefficients(dofs[1]) + coefficients(dofs[2])) / 3.0;
    }

    EdgeTrace edge_jump_average(const FEFunction &u, Index edge)
    {
        const Mesh &mesh = u.space->mesh();
        const Edge &e = mesh.edges.at(static_cast<std::size_t>(edge));
        if(e.isBoundary())
            throw Error("edge_jump_average: boundary edge has a single trace");

        const Index plus = e.plusCell;
        const Index minus = *e.minusCell;
        const FEFunction *fn = &u;
        auto traces = [fn, &mesh, edge, plus, minus](double t) {
            const Point x = (1.0 - t) * mesh.vertices[mesh.edges[edge].vertices[0]] +
                            t * mesh.vertices[mesh.edges[edge].vertices[1]];
            return std::pair<double, double>(fn->value(plus, x), fn->value(minus, x));
        };
        return EdgeTrace{
            [traces](double t) {
                const auto [p, m] = traces(t);
                return p - m;
            },
            [traces](double t) {
                const auto [p, m] = traces(t);
                return 0.5 * (p + m);
            }};
    }

    FEFunction interpolate(const FESpace &space, const std::function<double(const Point &)> &f)
    {
        Vector c(space.ndof());
        for(Index i = 0; i < space.ndof(); ++i)
            c(i) = f(space.node(i));
        return FEFunction(space, std::move(c));
    }
}
