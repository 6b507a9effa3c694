#ifndef GLPS_STUDY_HPP
#define GLPS_STUDY_HPP

#include "glps/norms.hpp"
#include "glps/solve.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace glps
{
    struct RunConfig
    {
        int example = 1;
        /// JSON problem description; overrides example when set.
        std::optional<std::string> problemConfig;
        SpaceKind space = SpaceKind::ConformingP1;
        MeshPattern pattern = MeshPattern::Crisscross;
        /// Subdivisions per axis of each level, strictly increasing.
        std::vector<Index> levels{4, 8, 16, 32, 64, 128};
        std::optional<double> beta;
        bool betaAuto = false;
        int quadAssembly = 5;
        int quadError = 8;
        /// CSV output path; empty for none.
        std::string out;
        /// Prefix for VTK / MatrixMarket exports.
        std::string exportPrefix = "glps";
        bool exportVtk = false;
        bool exportMatrix = false;

        void validate() const;
    };

    ProblemSpec resolve_problem(const RunConfig &config);

    /// Stabilization of the configured space: the problem's default beta
    /// unless overridden.
    StabilizationParams resolve_stabilization(const RunConfig &config, const ProblemSpec &spec);

    /// Everything produced by one assemble-and-solve pass.
    struct LevelSolution
    {
        std::unique_ptr<Mesh> mesh;
        std::unique_ptr<FESpace> space;
        SparseSystem system{1};
        FEFunction uh;
        SolveReport solve;
    };

    /// Builds mesh and space, assembles Galerkin + GLPS, solves to 1e-12.
    LevelSolution solve_level(const ProblemSpec &spec, SpaceKind kind, MeshPattern pattern, Index n,
                              const StabilizationParams &params, const AssemblyRules &rules = {});

    /// Errors and EOCs over all configured levels. A solver failure stops
    /// the study and marks the report incomplete.
    ConvergenceReport run_convergence(const RunConfig &config);

    struct RobustnessRow
    {
        Index level = 0;
        double h = 0.0;
        Index ndof = 0;
        double minimum = 0.0;
        double maximum = 0.0;
        /// max(u_h) - 1
        double overshoot = 0.0;
        /// -min(u_h)
        double undershoot = 0.0;
        /// max |u_h - u| over DOF nodes with |y| > 4h.
        double awayDeviation = 0.0;
        /// Largest |y| of the u_h = 1/2 level set.
        double layerOffset = 0.0;
    };

    struct RobustnessReport
    {
        std::vector<RobustnessRow> rows;
        bool complete = true;
    };

    /// Discontinuous-inflow diagnostics; the layer is the line y = 0.
    RobustnessRow robustness_diagnostics(const FEFunction &uh, const ProblemSpec &spec);

    RobustnessReport run_robustness(const RunConfig &config);

    /// CSV with header level,h,ndof,err_l2,eoc_l2,err_h1,eoc_h1,err_lpsd,eoc_lpsd;
    /// 6 significant digits, empty cells for undefined rates.
    std::string format_table(const ConvergenceReport &report);
    void emit_table(const ConvergenceReport &report, const std::string &path);
    ConvergenceReport parse_table(const std::string &csv);

    std::string format_robustness(const RobustnessReport &report);
}

#endif
