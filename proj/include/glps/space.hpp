#ifndef GLPS_SPACE_HPP
#define GLPS_SPACE_HPP

#include "glps/mesh.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>

namespace glps
{
    enum class SpaceKind
    {
        /// Continuous piecewise linears, one DOF per vertex.
        ConformingP1,
        /// Crouzeix-Raviart, one DOF per edge (value at the midpoint).
        CrouzeixRaviart
    };

    /// Values and physical gradients of the three local shape functions.
    struct BasisEval
    {
        Eigen::Vector3d values;
        /// Column i is the gradient of shape function i.
        Eigen::Matrix<double, 2, 3> gradients;
    };

    /// Degree-one finite element space on a mesh. Local DOF i of a cell is its
    /// vertex i (P1) or the edge opposite vertex i (CR).
    class FESpace
    {
    public:
        FESpace(const Mesh &mesh, SpaceKind kind);

        const Mesh &mesh() const { return *mesh_; }
        SpaceKind kind() const { return kind_; }
        Index ndof() const { return ndof_; }

        const std::array<Index, 3> &cellDofs(Index cell) const { return cellDofs_[cell]; }

        /// Location of the nodal functional of a DOF (vertex or edge midpoint).
        Point node(Index dof) const;

        /// Constant gradients of the local shape functions on a cell.
        const Eigen::Matrix<double, 2, 3> &gradients(Index cell) const { return gradients_[cell]; }

        /// Barycentric coordinates of x with respect to the cell vertices.
        Eigen::Vector3d barycentric(Index cell, const Point &x) const;

        /// Shape function values from barycentric coordinates (no range check).
        Eigen::Vector3d shapeValues(const Eigen::Vector3d &bary) const;

    private:
        const Mesh *mesh_;
        SpaceKind kind_;
        Index ndof_;
        std::vector<std::array<Index, 3>> cellDofs_;
        std::vector<Eigen::Matrix<double, 2, 3>> gradients_;
    };

    inline FESpace build_space(const Mesh &mesh, SpaceKind kind) { return FESpace(mesh, kind); }

    /// Shape functions of cell at point; throws if the point lies outside the
    /// cell by more than 1e-10 in barycentric coordinates.
    BasisEval eval_basis(const FESpace &space, Index cell, const Point &x);

    /// Discrete function: a space plus its coefficient vector.
    struct FEFunction
    {
        const FESpace *space = nullptr;
        Vector coefficients;

        FEFunction() = default;
        FEFunction(const FESpace &s, Vector c);

        /// Value of the restriction to cell at x (x need not lie in the cell).
        double value(Index cell, const Point &x) const;
        /// Cellwise constant gradient.
        Point gradient(Index cell) const;
        /// Mean value over a cell.
        double cellMean(Index cell) const;
    };

    /// Jump [u] = u+ - u- and average {u} = (u+ + u-)/2 along an interior edge,
    /// parametrized by t in [0, 1] from edge.vertices[0] to edge.vertices[1].
    struct EdgeTrace
    {
        std::function<double(double)> jump;
        std::function<double(double)> average;
    };

    EdgeTrace edge_jump_average(const FEFunction &u, Index edge);

    /// Nodal interpolant: coefficient i = f(node i).
    FEFunction interpolate(const FESpace &space, const std::function<double(const Point &)> &f);
}

#endif
