#ifndef GLPS_ASSEMBLY_HPP
#define GLPS_ASSEMBLY_HPP

#include "glps/cellwise.hpp"
#include "glps/problem.hpp"
#include "glps/quadrature.hpp"
#include "glps/sparse_system.hpp"

#include <vector>

namespace glps
{
    struct AssemblyRules
    {
        TriangleRule<double> cell = triangle_rule(5);
        EdgeRule<double> edge = edge_rule(5);

        static AssemblyRules ofDegree(int cellDegree, int edgeDegree)
        {
            return {triangle_rule(cellDegree), edge_rule(edgeDegree)};
        }
    };

    /// Patch over which the streamline derivative fluctuation is penalized,
    /// with its stabilization parameter (beta_a or beta_E).
    struct StabilizationPatch
    {
        Index id = -1;
        std::vector<Index> cells;
        double measure = 0.0;
        double weight = 0.0;
    };

    std::vector<StabilizationPatch> stabilization_patches(const Mesh &mesh,
                                                          const ProblemSpec &spec,
                                                          const StabilizationParams &params,
                                                          const TriangleRule<double> &rule);

    /// Dense local stabilization matrix of one patch:
    /// weight * int_patch kappa(phi_j) kappa(phi_i), with
    /// kappa(v) = b . grad v - mean_patch(b . grad v).
    struct FluctuationBlock
    {
        Index patch = -1;
        std::vector<Index> dofs;
        Matrix block;
    };

    FluctuationBlock fluctuation_block(const FESpace &space,
                                       const ProblemSpec &spec,
                                       const StabilizationPatch &patch,
                                       const TriangleRule<double> &rule);

    /// Galerkin part a_h with weak inflow terms, and l(v) in the rhs.
    SparseSystem assemble_galerkin_conforming(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules = {});

    /// Nonconforming Galerkin part with upwind jump terms on interior edges.
    SparseSystem assemble_galerkin_nonconforming(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules = {});

    /// Stabilization S_h^c over vertex patches; the rhs is zero.
    SparseSystem assemble_glps_conforming(const FESpace &space,
                                          const ProblemSpec &spec,
                                          const std::vector<VertexPatch> &patches,
                                          const StabilizationParams &params,
                                          const TriangleRule<double> &rule = triangle_rule(5));

    /// Stabilization S_h^nc over all edge patches; the rhs is zero.
    SparseSystem assemble_glps_nonconforming(const FESpace &space,
                                             const ProblemSpec &spec,
                                             const std::vector<EdgePatch> &patches,
                                             const StabilizationParams &params,
                                             const TriangleRule<double> &rule = triangle_rule(5));

    /// Galerkin form of either space (dispatches on space.kind()).
    SparseSystem assemble_galerkin(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules = {});

    /// Stabilization of either space with the matching patch type.
    SparseSystem assemble_glps(const FESpace &space, const ProblemSpec &spec, const StabilizationParams &params,
                               const TriangleRule<double> &rule = triangle_rule(5));

    /// Vector (a_h(u, phi_i))_i of the Galerkin form of the space applied to an
    /// arbitrary piecewise function u, without stabilization.
    Vector galerkin_action(const FESpace &space, const ProblemSpec &spec, const CellwiseFunction &u,
                           const AssemblyRules &rules = {});

    /// Load vector (l(phi_i))_i.
    Vector load_vector(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules = {});

    /// S(v, v) for a piecewise function given by its cellwise streamline
    /// derivative b . grad_h v.
    double stabilization_energy(const Mesh &mesh,
                                const std::vector<StabilizationPatch> &patches,
                                const std::function<double(Index, const Point &)> &streamline,
                                const TriangleRule<double> &rule);
}

#endif
