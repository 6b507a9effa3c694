// Convergence and robustness studies for the GLPS advection-reaction solver.

#include "glps/study.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

namespace
{
    std::vector<glps::Index> parse_levels(const std::string &text)
    {
        std::vector<glps::Index> levels;
        std::stringstream ss(text);
        std::string item;
        while(std::getline(ss, item, ','))
        {
            std::size_t used = 0;
            const long n = std::stol(item, &used);
            if(used != item.size())
                throw glps::Error("invalid level '" + item + "'");
            levels.push_back(n);
        }
        return levels;
    }

    void print_convergence(const glps::ConvergenceReport &report, bool nonconforming)
    {
        const auto rate = [](const std::optional<double> &r) {
            char buf[16];
            if(!r)
                return std::string("       -");
            std::snprintf(buf, sizeof buf, "%8.4f", *r);
            return std::string(buf);
        };
        std::printf("%10s %8s %12s %8s %12s %8s %12s %8s\n", "h", "ndof", "L2", "order", "H1", "order",
                    nonconforming ? "NLPSD" : "LPSD", "order");
        for(const auto &r : report.rows)
            std::printf("%10.6f %8ld %12.6e %s %12.6e %s %12.6e %s\n", r.h, static_cast<long>(r.ndof), r.errL2,
                        rate(r.eocL2).c_str(), r.errH1, rate(r.eocH1).c_str(), r.errLpsd, rate(r.eocLpsd).c_str());
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"GLPS finite element study for mu u + b . grad u = f"};

    glps::RunConfig config;
    std::string space = "conforming";
    std::string pattern = "crisscross";
    std::string levels = "4,8,16,32,64,128";
    double beta = 0.0;
    std::string problemFile;

    app.add_option("--example", config.example, "Benchmark problem 1..4")->check(CLI::Range(1, 4));
    app.add_option("--config", problemFile, "JSON problem description (overrides --example)")
        ->check(CLI::ExistingFile);
    app.add_option("--space", space, "conforming | nonconforming")
        ->check(CLI::IsMember({"conforming", "nonconforming"}));
    app.add_option("--pattern", pattern, "right | crisscross")->check(CLI::IsMember({"right", "crisscross"}));
    app.add_option("--levels", levels, "Comma-separated subdivisions per axis, strictly increasing");
    auto *betaOpt = app.add_option("--beta", beta, "Stabilization constant (default: per example and space)");
    app.add_flag("--beta-auto", config.betaAuto, "Scale beta by 1/||b||_W1inf on each patch");
    app.add_option("--quad-assembly", config.quadAssembly, "Triangle/edge rule degree for assembly")
        ->check(CLI::Range(1, 8));
    app.add_option("--quad-error", config.quadError, "Triangle/edge rule degree for error norms")
        ->check(CLI::Range(1, 8));
    app.add_option("--out", config.out, "CSV output path");
    app.add_option("--export-prefix", config.exportPrefix, "Path prefix of VTK/MatrixMarket exports");
    app.add_flag("--export-vtk", config.exportVtk, "Write the discrete solution of each level as VTK");
    app.add_flag("--export-matrix", config.exportMatrix, "Write each system as MatrixMarket files");

    CLI11_PARSE(app, argc, argv);

    try
    {
        config.space = space == "conforming" ? glps::SpaceKind::ConformingP1 : glps::SpaceKind::CrouzeixRaviart;
        config.pattern = pattern == "right" ? glps::MeshPattern::Right : glps::MeshPattern::Crisscross;
        config.levels = parse_levels(levels);
        if(*betaOpt)
            config.beta = beta;
        if(!problemFile.empty())
            config.problemConfig = problemFile;
        config.validate();

        const auto spec = glps::resolve_problem(config);
        {
            const auto mesh = glps::build_structured_mesh(spec.domain, config.levels.front(), config.pattern);
            const auto check = glps::check_coercivity(spec, mesh, glps::triangle_rule(config.quadAssembly));
            if(!check.ok)
                std::cerr << "warning: coercivity hypothesis violated, min(mu - div b / 2) = " << check.minimum
                          << " (alpha = " << spec.alpha << ")\n";
        }

        const bool nonconforming = config.space == glps::SpaceKind::CrouzeixRaviart;
        if(!config.problemConfig && config.example == 4)
        {
            const auto report = glps::run_robustness(config);
            std::cout << glps::format_robustness(report);
            if(!report.complete)
            {
                std::cerr << "error: solver failure, report incomplete\n";
                return 2;
            }
            return 0;
        }

        const auto report = glps::run_convergence(config);
        print_convergence(report, nonconforming);
        if(spec.alpha == 0.0)
            std::cout << "note: alpha = 0, the alpha ||e||^2 term is absent from the norm\n";
        if(!report.complete)
        {
            std::cerr << "error: solver failure, report incomplete\n";
            return 2;
        }
    }
    catch(const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
