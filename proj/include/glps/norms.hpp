#ifndef GLPS_NORMS_HPP
#define GLPS_NORMS_HPP

#include "glps/assembly.hpp"
#include "glps/cellwise.hpp"
#include "glps/problem.hpp"

#include <optional>
#include <vector>

namespace glps
{
    struct NormRules
    {
        TriangleRule<double> cell = triangle_rule(8);
        EdgeRule<double> edge = edge_rule(8);

        static NormRules ofDegree(int degree) { return {triangle_rule(degree), edge_rule(degree)}; }
    };

    /// Squared contributions of the (N)LPSD norm of an error function.
    struct ErrorReport
    {
        double errL2 = 0.0;
        double errH1 = 0.0;
        /// alpha ||e||^2
        double reactionTerm = 0.0;
        /// sum_K h_K ||b . grad e||^2_K
        double streamlineTerm = 0.0;
        /// sum over boundary edges of int |b.n|/2 e^2
        double boundaryTerm = 0.0;
        /// S(e, e)
        double stabilizationTerm = 0.0;
        /// sum over interior edges of int |b.n|/2 [e]^2; nonconforming only.
        double jumpTerm = 0.0;
        bool nonconforming = false;

        /// LP (conforming) or NLP (nonconforming) norm.
        double lp() const;
        /// LPSD (conforming) or NLPSD (nonconforming) norm.
        double lpsd() const;
    };

    double l2_norm(const Mesh &mesh, const CellwiseFunction &e, const TriangleRule<double> &rule);
    /// Broken H1 seminorm.
    double h1_seminorm(const Mesh &mesh, const CellwiseFunction &e, const TriangleRule<double> &rule);

    double error_l2(const FEFunction &uh, const std::optional<ScalarField> &exact, const TriangleRule<double> &rule);
    double error_h1_semi(const FEFunction &uh, const std::optional<VectorField> &exactGradient,
                         const TriangleRule<double> &rule);

    /// Norm breakdown of an arbitrary piecewise function e; the jump term is
    /// included when the space is Crouzeix-Raviart.
    ErrorReport lpsd_norm(const FESpace &space, const ProblemSpec &spec, const StabilizationParams &params,
                          const CellwiseFunction &e, const NormRules &rules = {});

    /// Errors of u_h against the exact solution of spec in L2, broken H1 and
    /// the (N)LPSD norm.
    ErrorReport error_lpsd(const FEFunction &uh, const ProblemSpec &spec, const StabilizationParams &params,
                           const NormRules &rules = {});

    /// eoc_k = ln(e_{k-1}/e_k) / ln(h_{k-1}/h_k); the first entry and entries
    /// involving a zero error are empty.
    std::vector<std::optional<double>> eoc(const std::vector<double> &errors, const std::vector<double> &hs);

    struct ConvergenceRow
    {
        Index level = 0;
        double h = 0.0;
        Index ndof = 0;
        double errL2 = 0.0;
        std::optional<double> eocL2;
        double errH1 = 0.0;
        std::optional<double> eocH1;
        double errLpsd = 0.0;
        std::optional<double> eocLpsd;
    };

    struct ConvergenceReport
    {
        std::vector<ConvergenceRow> rows;
        bool complete = true;

        /// Fills the eoc columns from the error columns.
        void computeRates();
    };
}

#endif
