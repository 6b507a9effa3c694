#ifndef GLPS_PROBLEM_HPP
#define GLPS_PROBLEM_HPP

#include "glps/mesh.hpp"
#include "glps/quadrature.hpp"
#include "glps/space.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>

namespace glps
{
    using ScalarField = std::function<double(const Point &)>;
    using VectorField = std::function<Point(const Point &)>;
    using TensorField = std::function<Eigen::Matrix2d(const Point &)>;

    /// Data of mu u + b . grad u = f in the domain, u = g on the inflow boundary.
    struct ProblemSpec
    {
        std::string name;
        Rectangle domain;
        VectorField velocity;
        /// Jacobian of b, used only by the automatic stabilization constant.
        TensorField velocityGradient;
        ScalarField divergence;
        ScalarField reaction;
        ScalarField source;
        ScalarField inflow;
        std::optional<ScalarField> exactSolution;
        std::optional<VectorField> exactGradient;
        /// Coercivity constant; lower bound of mu - div(b)/2.
        double alpha = 0.0;
        /// Default stabilization constants of each discretization.
        double betaConforming = 0.1;
        double betaNonconforming = 0.1;

        bool hasExactSolution() const { return exactSolution.has_value() && exactGradient.has_value(); }
    };

    enum class PatchKind
    {
        /// beta_a = beta h_a over vertex patches (conforming).
        Vertex,
        /// beta_E = beta h_E over edge patches (nonconforming).
        Edge
    };

    struct StabilizationParams
    {
        double beta = 0.1;
        PatchKind mode = PatchKind::Vertex;
        /// When set, beta on each patch is beta / ||b||_{W^1,inf(patch)}.
        bool autoScale = false;
    };

    /// Built-in benchmark problems 1..4.
    ProblemSpec example(int id);

    enum class SolutionPreset
    {
        SmoothPolynomial,
        TanhLayer,
        CircularLayer,
        Affine
    };

    SolutionPreset parse_solution_preset(const std::string &name);

    /// Problem with constant b and mu whose source and inflow data are
    /// manufactured from a preset exact solution.
    ProblemSpec manufactured_problem(const Rectangle &domain, const Point &b, double mu,
                                     SolutionPreset preset, double beta);

    /// Reads a JSON problem description:
    /// {"domain": [xmin, xmax, ymin, ymax], "b": [bx, by], "mu": m,
    ///  "beta": beta, "solution": "smooth_polynomial"}
    ProblemSpec load_problem_config(const std::string &path);

    struct CoercivityCheck
    {
        double minimum = 0.0;
        bool ok = false;
    };

    /// Minimum of mu - div(b)/2 over all quadrature points, and whether it is
    /// positive and bounded below by alpha (up to 1e-12).
    CoercivityCheck check_coercivity(const ProblemSpec &spec, const Mesh &mesh, const TriangleRule<double> &rule);
}

#endif
