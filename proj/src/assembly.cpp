#include "glps/assembly.hpp"

#include <algorithm>
#include <cmath>

namespace glps
{
    namespace
    {
        // (b.n)^- = (|b.n| - b.n) / 2
        double negative_part(double bn) { return 0.5 * (std::abs(bn) - bn); }

        Eigen::Vector3d shape_at(const FESpace &space, Index cell, const Point &x)
        {
            return space.shapeValues(space.barycentric(cell, x));
        }

        std::span<const Index> dofs_of(const FESpace &space, Index cell)
        {
            return {space.cellDofs(cell).data(), 3};
        }

        /// Cell and boundary-edge terms shared by both spaces.
        void add_volume_and_boundary(SparseSystem &sys, const FESpace &space, const ProblemSpec &spec,
                                     const AssemblyRules &rules)
        {
            const Mesh &mesh = space.mesh();
            for(Index k = 0; k < mesh.numCells(); ++k)
            {
                const double jac = 2.0 * mesh.cellAreas[k];
                const auto &grad = space.gradients(k);
                Matrix local = Matrix::Zero(3, 3);
                for(std::size_t q = 0; q < rules.cell.size(); ++q)
                {
                    const Point x = map_to_cell(mesh, k, rules.cell.points[q]);
                    const Eigen::Vector3d phi = space.shapeValues(rules.cell.points[q]);
                    const Eigen::RowVector3d streamline = spec.velocity(x).transpose() * grad;
                    const double w = rules.cell.weights[q] * jac;
                    local.noalias() += w * phi * (streamline + spec.reaction(x) * phi.transpose());
                }
                sys.addBlock(dofs_of(space, k), local);
            }

            for(Index e = 0; e < mesh.numEdges(); ++e)
            {
                const Edge &edge = mesh.edges[e];
                if(!edge.isBoundary())
                    continue;
                const Index k = edge.plusCell;
                Matrix local = Matrix::Zero(3, 3);
                for(std::size_t q = 0; q < rules.edge.size(); ++q)
                {
                    const Point x = map_to_edge(mesh, e, rules.edge.points[q]);
                    const double weight = negative_part(spec.velocity(x).dot(edge.normal));
                    if(weight == 0.0)
                        continue;
                    const Eigen::Vector3d phi = shape_at(space, k, x);
                    local.noalias() += rules.edge.weights[q] * edge.length * weight * phi * phi.transpose();
                }
                sys.addBlock(dofs_of(space, k), local);
            }
        }

        double velocity_w1inf(const Mesh &mesh, const ProblemSpec &spec, const std::vector<Index> &cells,
                              const TriangleRule<double> &rule)
        {
            double norm = 0.0;
            for(Index k : cells)
                for(const auto &bary : rule.points)
                {
                    const Point x = map_to_cell(mesh, k, bary);
                    norm = std::max(norm, spec.velocity(x).cwiseAbs().maxCoeff());
                    if(spec.velocityGradient)
                        norm = std::max(norm, spec.velocityGradient(x).cwiseAbs().maxCoeff());
                }
            return norm;
        }

        double patch_weight(const Mesh &mesh, const ProblemSpec &spec, const StabilizationParams &params,
                            const std::vector<Index> &cells, double localSize, const TriangleRule<double> &rule)
        {
            if(params.beta < 0.0)
                throw Error("stabilization constant beta must be nonnegative");
            double beta = params.beta;
            if(params.autoScale)
            {
                const double norm = velocity_w1inf(mesh, spec, cells, rule);
                beta = norm > 0.0 ? params.beta / norm : 0.0;
            }
            return beta * localSize;
        }

        std::vector<StabilizationPatch> from_vertex_patches(const Mesh &mesh, const ProblemSpec &spec,
                                                            const std::vector<VertexPatch> &patches,
                                                            const StabilizationParams &params,
                                                            const TriangleRule<double> &rule)
        {
            std::vector<StabilizationPatch> result;
            result.reserve(patches.size());
            for(const auto &p : patches)
                result.push_back({p.vertex, p.cells, p.measure,
                                  patch_weight(mesh, spec, params, p.cells, p.localSize, rule)});
            return result;
        }

        std::vector<StabilizationPatch> from_edge_patches(const Mesh &mesh, const ProblemSpec &spec,
                                                          const std::vector<EdgePatch> &patches,
                                                          const StabilizationParams &params,
                                                          const TriangleRule<double> &rule)
        {
            std::vector<StabilizationPatch> result;
            result.reserve(patches.size());
            for(const auto &p : patches)
                result.push_back({p.edge, p.cells, p.measure,
                                  patch_weight(mesh, spec, params, p.cells, mesh.edges[p.edge].length, rule)});
            return result;
        }

        SparseSystem assemble_patches(const FESpace &space, const ProblemSpec &spec,
                                      const std::vector<StabilizationPatch> &patches,
                                      const TriangleRule<double> &rule)
        {
            SparseSystem sys(space.ndof());
            for(const auto &patch : patches)
            {
                if(patch.weight == 0.0)
                    continue;
                const auto fb = fluctuation_block(space, spec, patch, rule);
                sys.addBlock(fb.dofs, fb.block);
            }
            sys.finalize();
            return sys;
        }
    }

    std::vector<StabilizationPatch> stabilization_patches(const Mesh &mesh,
                                                          const ProblemSpec &spec,
                                                          const StabilizationParams &params,
                                                          const TriangleRule<double> &rule)
    {
        if(params.mode == PatchKind::Vertex)
            return from_vertex_patches(mesh, spec, vertex_patches(mesh), params, rule);
        return from_edge_patches(mesh, spec, edge_patches(mesh), params, rule);
    }

    FluctuationBlock fluctuation_block(const FESpace &space,
                                       const ProblemSpec &spec,
                                       const StabilizationPatch &patch,
                                       const TriangleRule<double> &rule)
    {
        const Mesh &mesh = space.mesh();
        FluctuationBlock fb;
        fb.patch = patch.id;
        for(Index k : patch.cells)
            for(Index d : space.cellDofs(k))
                fb.dofs.push_back(d);
        std::sort(fb.dofs.begin(), fb.dofs.end());
        fb.dofs.erase(std::unique(fb.dofs.begin(), fb.dofs.end()), fb.dofs.end());
        const auto m = static_cast<Index>(fb.dofs.size());

        const auto local_index = [&fb](Index dof) {
            return static_cast<Index>(std::lower_bound(fb.dofs.begin(), fb.dofs.end(), dof) - fb.dofs.begin());
        };

        // Streamline derivatives of every patch DOF at every quadrature point.
        const auto nq = static_cast<Index>(rule.size());
        const auto nc = static_cast<Index>(patch.cells.size());
        Matrix streamline = Matrix::Zero(m, nc * nq);
        Vector weights(nc * nq);
        for(Index c = 0; c < nc; ++c)
        {
            const Index k = patch.cells[c];
            const auto &grad = space.gradients(k);
            std::array<Index, 3> loc;
            for(int i = 0; i < 3; ++i)
                loc[i] = local_index(space.cellDofs(k)[i]);
            for(Index q = 0; q < nq; ++q)
            {
                const Point x = map_to_cell(mesh, k, rule.points[q]);
                const Eigen::RowVector3d s = spec.velocity(x).transpose() * grad;
                for(int i = 0; i < 3; ++i)
                    streamline(loc[i], c * nq + q) = s(i);
                weights(c * nq + q) = rule.weights[q] * 2.0 * mesh.cellAreas[k];
            }
        }

        const Vector means = streamline * weights / patch.measure;
        streamline.colwise() -= means;
        fb.block = patch.weight * streamline * weights.asDiagonal() * streamline.transpose();
        return fb;
    }

    Vector load_vector(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules)
    {
        const Mesh &mesh = space.mesh();
        Vector rhs = Vector::Zero(space.ndof());
        for(Index k = 0; k < mesh.numCells(); ++k)
        {
            const double jac = 2.0 * mesh.cellAreas[k];
            Eigen::Vector3d local = Eigen::Vector3d::Zero();
            for(std::size_t q = 0; q < rules.cell.size(); ++q)
            {
                const Point x = map_to_cell(mesh, k, rules.cell.points[q]);
                local += rules.cell.weights[q] * jac * spec.source(x) * space.shapeValues(rules.cell.points[q]);
            }
            for(int i = 0; i < 3; ++i)
                rhs(space.cellDofs(k)[i]) += local(i);
        }
        for(Index e = 0; e < mesh.numEdges(); ++e)
        {
            const Edge &edge = mesh.edges[e];
            if(!edge.isBoundary())
                continue;
            const Index k = edge.plusCell;
            Eigen::Vector3d local = Eigen::Vector3d::Zero();
            for(std::size_t q = 0; q < rules.edge.size(); ++q)
            {
                const Point x = map_to_edge(mesh, e, rules.edge.points[q]);
                const double weight = negative_part(spec.velocity(x).dot(edge.normal));
                if(weight == 0.0)
                    continue;
                local += rules.edge.weights[q] * edge.length * weight * spec.inflow(x) * shape_at(space, k, x);
            }
            for(int i = 0; i < 3; ++i)
                rhs(space.cellDofs(k)[i]) += local(i);
        }
        return rhs;
    }

    SparseSystem assemble_galerkin_conforming(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules)
    {
        if(space.kind() != SpaceKind::ConformingP1)
            throw Error("assemble_galerkin_conforming: requires a P1 space");
        SparseSystem sys(space.ndof());
        add_volume_and_boundary(sys, space, spec, rules);
        sys.rhs() = load_vector(space, spec, rules);
        sys.finalize();
        return sys;
    }

    SparseSystem assemble_galerkin_nonconforming(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules)
    {
        if(space.kind() != SpaceKind::CrouzeixRaviart)
            throw Error("assemble_galerkin_nonconforming: requires a Crouzeix-Raviart space");
        const Mesh &mesh = space.mesh();
        SparseSystem sys(space.ndof());
        add_volume_and_boundary(sys, space, spec, rules);

        // - int (b.n)[u]{v} + int |b.n|/2 [u][v] on interior edges; local
        // DOFs are those of K+ followed by those of K-.
        for(Index e = 0; e < mesh.numEdges(); ++e)
        {
            const Edge &edge = mesh.edges[e];
            if(edge.isBoundary())
                continue;
            const Index kp = edge.plusCell, km = *edge.minusCell;
            std::array<Index, 6> dofs;
            for(int i = 0; i < 3; ++i)
            {
                dofs[i] = space.cellDofs(kp)[i];
                dofs[3 + i] = space.cellDofs(km)[i];
            }
            Matrix local = Matrix::Zero(6, 6);
            for(std::size_t q = 0; q < rules.edge.size(); ++q)
            {
                const Point x = map_to_edge(mesh, e, rules.edge.points[q]);
                const double bn = spec.velocity(x).dot(edge.normal);
                Eigen::Matrix<double, 6, 1> jump, avg;
                const Eigen::Vector3d pp = shape_at(space, kp, x), pm = shape_at(space, km, x);
                jump << pp, -pm;
                avg << 0.5 * pp, 0.5 * pm;
                const double w = rules.edge.weights[q] * edge.length;
                local.noalias() += w * (-bn * avg * jump.transpose() + 0.5 * std::abs(bn) * jump * jump.transpose());
            }
            sys.addBlock(dofs, local);
        }

        sys.rhs() = load_vector(space, spec, rules);
        sys.finalize();
        return sys;
    }

    SparseSystem assemble_glps_conforming(const FESpace &space,
                                          const ProblemSpec &spec,
                                          const std::vector<VertexPatch> &patches,
                                          const StabilizationParams &params,
                                          const TriangleRule<double> &rule)
    {
        return assemble_patches(space, spec, from_vertex_patches(space.mesh(), spec, patches, params, rule), rule);
    }

    SparseSystem assemble_glps_nonconforming(const FESpace &space,
                                             const ProblemSpec &spec,
                                             const std::vector<EdgePatch> &patches,
                                             const StabilizationParams &params,
                                             const TriangleRule<double> &rule)
    {
        return assemble_patches(space, spec, from_edge_patches(space.mesh(), spec, patches, params, rule), rule);
    }

    SparseSystem assemble_galerkin(const FESpace &space, const ProblemSpec &spec, const AssemblyRules &rules)
    {
        return space.kind() == SpaceKind::ConformingP1 ? assemble_galerkin_conforming(space, spec, rules)
                                                       : assemble_galerkin_nonconforming(space, spec, rules);
    }

    SparseSystem assemble_glps(const FESpace &space, const ProblemSpec &spec, const StabilizationParams &params,
                               const TriangleRule<double> &rule)
    {
        return assemble_patches(space, spec, stabilization_patches(space.mesh(), spec, params, rule), rule);
    }

    Vector galerkin_action(const FESpace &space, const ProblemSpec &spec, const CellwiseFunction &u,
                           const AssemblyRules &rules)
    {
        const Mesh &mesh = space.mesh();
        Vector result = Vector::Zero(space.ndof());
        const auto scatter = [&](Index k, const Eigen::Vector3d &local) {
            for(int i = 0; i < 3; ++i)
                result(space.cellDofs(k)[i]) += local(i);
        };

        for(Index k = 0; k < mesh.numCells(); ++k)
        {
            const double jac = 2.0 * mesh.cellAreas[k];
            Eigen::Vector3d local = Eigen::Vector3d::Zero();
            for(std::size_t q = 0; q < rules.cell.size(); ++q)
            {
                const Point x = map_to_cell(mesh, k, rules.cell.points[q]);
                const double residual = spec.velocity(x).dot(u.gradient(k, x)) + spec.reaction(x) * u.value(k, x);
                local += rules.cell.weights[q] * jac * residual * space.shapeValues(rules.cell.points[q]);
            }
            scatter(k, local);
        }

        const bool jumps = space.kind() == SpaceKind::CrouzeixRaviart;
        for(Index e = 0; e < mesh.numEdges(); ++e)
        {
            const Edge &edge = mesh.edges[e];
            if(edge.isBoundary())
            {
                const Index k = edge.plusCell;
                Eigen::Vector3d local = Eigen::Vector3d::Zero();
                for(std::size_t q = 0; q < rules.edge.size(); ++q)
                {
                    const Point x = map_to_edge(mesh, e, rules.edge.points[q]);
                    const double weight = negative_part(spec.velocity(x).dot(edge.normal));
                    local += rules.edge.weights[q] * edge.length * weight * u.value(k, x) * shape_at(space, k, x);
                }
                scatter(k, local);
            }
            else if(jumps)
            {
                const Index kp = edge.plusCell, km = *edge.minusCell;
                Eigen::Vector3d lp = Eigen::Vector3d::Zero(), lm = Eigen::Vector3d::Zero();
                for(std::size_t q = 0; q < rules.edge.size(); ++q)
                {
                    const Point x = map_to_edge(mesh, e, rules.edge.points[q]);
                    const double bn = spec.velocity(x).dot(edge.normal);
                    const double jump = u.value(kp, x) - u.value(km, x);
                    const double w = rules.edge.weights[q] * edge.length;
                    // v+ enters [v] with +1 and {v} with 1/2; v- with -1 and 1/2.
                    lp += w * jump * (-0.5 * bn + 0.5 * std::abs(bn)) * shape_at(space, kp, x);
                    lm += w * jump * (-0.5 * bn - 0.5 * std::abs(bn)) * shape_at(space, km, x);
                }
                scatter(kp, lp);
                scatter(km, lm);
            }
        }
        return result;
    }

    double stabilization_energy(const Mesh &mesh,
                                const std::vector<StabilizationPatch> &patches,
                                const std::function<double(Index, const Point &)> &streamline,
                                const TriangleRule<double> &rule)
    {
        double energy = 0.0;
        std::vector<double> values;
        for(const auto &patch : patches)
        {
            if(patch.weight == 0.0)
                continue;
            values.clear();
            double mean = 0.0;
            for(Index k : patch.cells)
                for(std::size_t q = 0; q < rule.size(); ++q)
                {
                    const double s = streamline(k, map_to_cell(mesh, k, rule.points[q]));
                    values.push_back(s);
                    mean += rule.weights[q] * 2.0 * mesh.cellAreas[k] * s;
                }
            mean /= patch.measure;
            double local = 0.0;
            std::size_t idx = 0;
            for(Index k : patch.cells)
                for(std::size_t q = 0; q < rule.size(); ++q, ++idx)
                {
                    const double f = values[idx] - mean;
                    local += rule.weights[q] * 2.0 * mesh.cellAreas[k] * f * f;
                }
            energy += patch.weight * local;
        }
        return energy;
    }
}
