#include "glps/study.hpp"

#include "glps/vtk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace glps
{
    void RunConfig::validate() const
    {
        if(!problemConfig && (example < 1 || example > 4))
            throw Error("example must be in 1..4");
        if(levels.empty())
            throw Error("at least one level is required");
        for(std::size_t k = 0; k < levels.size(); ++k)
        {
            if(levels[k] < 1)
                throw Error("levels must be positive");
            if(k > 0 && levels[k] <= levels[k - 1])
                throw Error("levels must be strictly increasing");
        }
        if(beta && !(*beta > 0.0))
            throw Error("beta must be positive");
    }

    ProblemSpec resolve_problem(const RunConfig &config)
    {
        return config.problemConfig ? load_problem_config(*config.problemConfig) : example(config.example);
    }

    StabilizationParams resolve_stabilization(const RunConfig &config, const ProblemSpec &spec)
    {
        StabilizationParams params;
        const bool conforming = config.space == SpaceKind::ConformingP1;
        params.mode = conforming ? PatchKind::Vertex : PatchKind::Edge;
        params.beta = config.beta.value_or(conforming ? spec.betaConforming : spec.betaNonconforming);
        params.autoScale = config.betaAuto;
        return params;
    }

    LevelSolution solve_level(const ProblemSpec &spec, SpaceKind kind, MeshPattern pattern, Index n,
                              const StabilizationParams &params, const AssemblyRules &rules)
    {
        LevelSolution level;
        level.mesh = std::make_unique<Mesh>(build_structured_mesh(spec.domain, n, pattern));
        level.space = std::make_unique<FESpace>(*level.mesh, kind);
        const auto galerkin = assemble_galerkin(*level.space, spec, rules);
        const auto stab = assemble_glps(*level.space, spec, params, rules.cell);
        level.system = combine(galerkin, stab);
        level.solve = solve(level.system);
        level.uh = FEFunction(*level.space, level.solve.solution);
        return level;
    }

    namespace
    {
        void export_level(const RunConfig &config, std::size_t k, const LevelSolution &level)
        {
            const std::string stem = config.exportPrefix + "_level" + std::to_string(k);
            if(config.exportVtk)
                write_vtk(stem + ".vtk", level.uh);
            if(config.exportMatrix)
            {
                write_matrix_market(stem + "_matrix.mtx", level.system.matrix());
                write_vector_market(stem + "_rhs.mtx", level.system.rhs());
            }
        }

        std::string fmt6(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            return buf;
        }

        std::string fmt6(const std::optional<double> &v) { return v ? fmt6(*v) : std::string(); }
    }

    ConvergenceReport run_convergence(const RunConfig &config)
    {
        config.validate();
        const auto spec = resolve_problem(config);
        if(!spec.hasExactSolution())
            throw Error("run_convergence: problem has no exact solution");
        const auto params = resolve_stabilization(config, spec);
        const auto rules = AssemblyRules::ofDegree(config.quadAssembly, config.quadAssembly);
        const auto normRules = NormRules::ofDegree(config.quadError);

        ConvergenceReport report;
        for(std::size_t k = 0; k < config.levels.size(); ++k)
        {
            LevelSolution level;
            try
            {
                level = solve_level(spec, config.space, config.pattern, config.levels[k], params, rules);
            }
            catch(const SolveError &)
            {
                report.complete = false;
                break;
            }
            const auto errors = error_lpsd(level.uh, spec, params, normRules);
            ConvergenceRow row;
            row.level = static_cast<Index>(k);
            row.h = level.mesh->meshSize();
            row.ndof = level.space->ndof();
            row.errL2 = errors.errL2;
            row.errH1 = errors.errH1;
            row.errLpsd = errors.lpsd();
            report.rows.push_back(row);
            export_level(config, k, level);
        }
        report.computeRates();
        if(!config.out.empty())
            emit_table(report, config.out);
        return report;
    }

    RobustnessRow robustness_diagnostics(const FEFunction &uh, const ProblemSpec &spec)
    {
        const FESpace &space = *uh.space;
        const Mesh &mesh = space.mesh();
        RobustnessRow row;
        row.h = mesh.meshSize();
        row.ndof = space.ndof();
        row.minimum = uh.coefficients.minCoeff();
        row.maximum = uh.coefficients.maxCoeff();
        row.overshoot = row.maximum - 1.0;
        row.undershoot = -row.minimum;

        const ScalarField exact = spec.exactSolution ? *spec.exactSolution : spec.inflow;
        for(Index i = 0; i < space.ndof(); ++i)
        {
            const Point x = space.node(i);
            if(std::abs(x.y()) > 4.0 * row.h)
                row.awayDeviation = std::max(row.awayDeviation, std::abs(uh.coefficients(i) - exact(x)));
        }

        // Crossings of the 1/2 level on the cell boundaries of each (affine) restriction.
        for(Index k = 0; k < mesh.numCells(); ++k)
        {
            for(int i = 0; i < 3; ++i)
            {
                const Point a = mesh.vertex(k, i), b = mesh.vertex(k, (i + 1) % 3);
                const double fa = uh.value(k, a) - 0.5, fb = uh.value(k, b) - 0.5;
                if((fa < 0.0) == (fb < 0.0) && fa != 0.0)
                    continue;
                const double t = fa == fb ? 0.0 : fa / (fa - fb);
                const Point x = a + t * (b - a);
                row.layerOffset = std::max(row.layerOffset, std::abs(x.y()));
            }
        }
        return row;
    }

    RobustnessReport run_robustness(const RunConfig &config)
    {
        config.validate();
        const auto spec = resolve_problem(config);
        const auto params = resolve_stabilization(config, spec);
        const auto rules = AssemblyRules::ofDegree(config.quadAssembly, config.quadAssembly);

        RobustnessReport report;
        for(std::size_t k = 0; k < config.levels.size(); ++k)
        {
            LevelSolution level;
            try
            {
                level = solve_level(spec, config.space, config.pattern, config.levels[k], params, rules);
            }
            catch(const SolveError &)
            {
                report.complete = false;
                break;
            }
            auto row = robustness_diagnostics(level.uh, spec);
            row.level = static_cast<Index>(k);
            report.rows.push_back(row);
            export_level(config, k, level);
        }
        if(!config.out.empty())
        {
            std::ofstream out(config.out, std::ios::binary);
            if(!out)
                throw Error("cannot write '" + config.out + "'");
            out << format_robustness(report);
        }
        return report;
    }

    std::string format_table(const ConvergenceReport &report)
    {
        std::string csv = "level,h,ndof,err_l2,eoc_l2,err_h1,eoc_h1,err_lpsd,eoc_lpsd\n";
        for(const auto &r : report.rows)
        {
            csv += std::to_string(r.level) + ',' + fmt6(r.h) + ',' + std::to_string(r.ndof) + ',' +
                   fmt6(r.errL2) + ',' + fmt6(r.eocL2) + ',' + fmt6(r.errH1) + ',' + fmt6(r.eocH1) + ',' +
                   fmt6(r.errLpsd) + ',' + fmt6(r.eocLpsd) + '\n';
        }
        return csv;
    }

    void emit_table(const ConvergenceReport &report, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if(!out)
            throw Error("cannot write '" + path + "'");
        out << format_table(report);
        if(!out)
            throw Error("failed writing '" + path + "'");
    }

    ConvergenceReport parse_table(const std::string &csv)
    {
        std::istringstream in(csv);
        std::string line;
        if(!std::getline(in, line) || line != "level,h,ndof,err_l2,eoc_l2,err_h1,eoc_h1,err_lpsd,eoc_lpsd")
            throw Error("parse_table: unexpected header");

        const auto optional_value = [](const std::string &cell) -> std::optional<double> {
            if(cell.empty())
                return std::nullopt;
            return std::stod(cell);
        };

        ConvergenceReport report;
        while(std::getline(in, line))
        {
            if(line.empty())
                continue;
            std::vector<std::string> cells;
            std::size_t start = 0;
            for(;;)
            {
                const auto comma = line.find(',', start);
                cells.push_back(line.substr(start, comma - start));
                if(comma == std::string::npos)
                    break;
                start = comma + 1;
            }
            if(cells.size() != 9)
                throw Error("parse_table: expected 9 columns");
            ConvergenceRow r;
            r.level = std::stol(cells[0]);
            r.h = std::stod(cells[1]);
            r.ndof = std::stol(cells[2]);
            r.errL2 = std::stod(cells[3]);
            r.eocL2 = optional_value(cells[4]);
            r.errH1 = std::stod(cells[5]);
            r.eocH1 = optional_value(cells[6]);
            r.errLpsd = std::stod(cells[7]);
            r.eocLpsd = optional_value(cells[8]);
            report.rows.push_back(r);
        }
        return report;
    }

    std::string format_robustness(const RobustnessReport &report)
    {
        std::string csv = "level,h,ndof,min,max,overshoot,undershoot,away_deviation,layer_offset\n";
        for(const auto &r : report.rows)
        {
            csv += std::to_string(r.level) + ',' + fmt6(r.h) + ',' + std::to_string(r.ndof) + ',' +
                   fmt6(r.minimum) + ',' + fmt6(r.maximum) + ',' + fmt6(r.overshoot) + ',' + fmt6(r.undershoot) +
                   ',' + fmt6(r.awayDeviation) + ',' + fmt6(r.layerOffset) + '\n';
        }
        return csv;
    }
}
