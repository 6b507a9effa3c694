// Acceptance suite: one PASS/FAIL line per criterion, measured values in the
// detail lines. Exit status is nonzero when any criterion fails.

#include "oracle.hpp"

#include "glps/norms.hpp"
#include "glps/study.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

using namespace glps;

namespace
{
    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point start)
    {
        return std::chrono::duration<double>(Clock::now() - start).count();
    }

    struct Criterion
    {
        int id;
        std::string title;
        bool passed = true;
        std::vector<std::string> details;

        void check(bool ok, const std::string &what)
        {
            passed = passed && ok;
            details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
        }
    };

    std::string fmt(const char *format, double a, double b = 0.0, double c = 0.0)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf, format, a, b, c);
        return buf;
    }

    bool in_range(const std::optional<double> &v, double lo, double hi) { return v && *v >= lo && *v <= hi; }

    void check_rate(Criterion &c, const char *name, const ConvergenceRow &row, const std::optional<double> &rate,
                    double lo, double hi)
    {
        c.check(in_range(rate, lo, hi), std::string(name) + fmt(" EOC at h=%.6g: %.4f in [%.2f, ", row.h,
                                                                 rate.value_or(NAN), lo) +
                                            fmt("%.2f]", hi));
    }

    ConvergenceReport study(int example, SpaceKind space, std::vector<Index> levels, Criterion &c)
    {
        RunConfig config;
        config.example = example;
        config.space = space;
        config.levels = std::move(levels);
        auto report = run_convergence(config);
        c.check(report.complete && report.rows.size() == config.levels.size(), "all levels solved");
        return report;
    }

    // Reference errors (L2, H1, LPSD) of the conforming first benchmark, h = 1/4 ... 1/128.
    constexpr double table1[6][3] = {{0.263770, 1.540172, 1.818878}, {0.080853, 0.847902, 0.711660},
                                     {0.021496, 0.320976, 0.180366}, {0.004985, 0.125672, 0.054998},
                                     {0.001214, 0.056010, 0.018152}, {0.000299, 0.025754, 0.006203}};

    void criterion1(Criterion &c)
    {
        const auto start = Clock::now();
        const auto report = study(1, SpaceKind::ConformingP1, {4, 8, 16, 32, 64, 128}, c);
        const double elapsed = seconds_since(start);
        if(report.rows.size() != 6)
            return;
        for(std::size_t k = 4; k < 6; ++k)
        {
            const auto &r = report.rows[k];
            check_rate(c, "L2", r, r.eocL2, 1.8, 2.2);
            check_rate(c, "H1", r, r.eocH1, 0.9, 1.4);
            check_rate(c, "LPSD", r, r.eocLpsd, 1.35, 1.7);
        }
        c.check(elapsed < 120.0, fmt("six-level study took %.1f s (< 120 s)", elapsed));
        const char *names[] = {"L2", "H1", "LPSD"};
        for(int col = 0; col < 3; ++col)
        {
            double worst = 1.0;
            for(std::size_t k = 0; k < 6; ++k)
            {
                const auto &r = report.rows[k];
                const double v = col == 0 ? r.errL2 : col == 1 ? r.errH1 : r.errLpsd;
                const double ratio = std::max(v / table1[k][col], table1[k][col] / v);
                worst = std::max(worst, ratio);
            }
            c.check(worst <= 3.0, std::string(names[col]) + fmt(" errors within factor 3 of reference table: "
                                                                 "worst factor %.2f",
                                                                 worst));
        }
    }

    void criterion2(Criterion &c)
    {
        const auto report = study(1, SpaceKind::CrouzeixRaviart, {4, 8, 16, 32, 64, 128}, c);
        if(report.rows.empty())
            return;
        const auto &r = report.rows.back();
        check_rate(c, "L2", r, r.eocL2, 1.8, 2.2);
        check_rate(c, "H1", r, r.eocH1, 1.0, 1.45);
        check_rate(c, "NLPSD", r, r.eocLpsd, 1.5, 1.9);
    }

    void criterion3(Criterion &c)
    {
        const auto conf = study(2, SpaceKind::ConformingP1, {4, 8, 16, 32, 64, 128, 256}, c);
        if(!conf.rows.empty())
        {
            const auto &r = conf.rows.back();
            c.check(std::abs(r.h - 1.0 / 256) < 1e-14, fmt("conforming finest h = %.6g", r.h));
            check_rate(c, "conforming L2", r, r.eocL2, 1.8, 2.2);
            check_rate(c, "conforming H1", r, r.eocH1, 0.9, 1.2);
        }
        const auto nc = study(2, SpaceKind::CrouzeixRaviart, {4, 8, 16, 32, 64, 128}, c);
        if(!nc.rows.empty())
        {
            const auto &r = nc.rows.back();
            check_rate(c, "nonconforming L2", r, r.eocL2, 1.8, 2.2);
        }
    }

    void criterion4(Criterion &c)
    {
        for(auto space : {SpaceKind::ConformingP1, SpaceKind::CrouzeixRaviart})
        {
            const auto report = study(3, space, {4, 8, 16, 32, 64, 128}, c);
            if(report.rows.size() < 4)
                continue;
            double sum = 0.0;
            bool defined = true;
            for(std::size_t k = report.rows.size() - 3; k < report.rows.size(); ++k)
            {
                defined = defined && report.rows[k].eocLpsd.has_value();
                sum += report.rows[k].eocLpsd.value_or(0.0);
            }
            const double mean = sum / 3.0;
            c.check(defined && mean >= 1.0,
                    std::string(space == SpaceKind::ConformingP1 ? "LPSD" : "NLPSD") +
                        fmt(" EOC mean over three finest levels %.4f (>= 1.0)", mean));
        }
    }

    void criterion5(Criterion &c)
    {
        for(auto space : {SpaceKind::ConformingP1, SpaceKind::CrouzeixRaviart})
        {
            RunConfig config;
            config.example = 4;
            config.space = space;
            config.levels = {128};
            config.beta = 0.7;
            const auto report = run_robustness(config);
            c.check(report.complete && report.rows.size() == 1, "solved");
            if(report.rows.empty())
                continue;
            const auto &r = report.rows.front();
            const std::string name = space == SpaceKind::ConformingP1 ? "conforming" : "nonconforming";
            c.check(std::abs(r.h - 1.0 / 64) < 1e-14, name + fmt(" h = %.6g", r.h));
            c.check(r.awayDeviation <= 0.05, name + fmt(" max deviation for |y| > 4h: %.3e (<= 0.05)", r.awayDeviation));
            c.check(r.minimum >= -0.5 && r.maximum <= 1.5,
                    name + fmt(" range [%.4f, %.4f] within [-0.5, 1.5]", r.minimum, r.maximum));
        }
    }

    // Property suite.

    StabilizationParams params_for(SpaceKind kind, double beta)
    {
        return {beta, kind == SpaceKind::ConformingP1 ? PatchKind::Vertex : PatchKind::Edge, false};
    }

    double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

    constexpr SpaceKind kinds[] = {SpaceKind::ConformingP1, SpaceKind::CrouzeixRaviart};

    bool stabilization_symmetric_psd()
    {
        std::mt19937 rng(2024);
        const std::vector<Mesh> meshes{build_structured_mesh({}, 4, MeshPattern::Right),
                                       build_structured_mesh({}, 4, MeshPattern::Crisscross),
                                       build_structured_mesh({}, 7, MeshPattern::Crisscross)};
        const auto spec = example(3);
        bool ok = true;
        for(const auto &mesh : meshes)
            for(auto kind : kinds)
            {
                const FESpace space(mesh, kind);
                const auto s = assemble_glps(space, spec, params_for(kind, 0.1));
                const Matrix d(s.matrix());
                const double scale = max_abs(d);
                ok = ok && max_abs(d - d.transpose()) <= 1e-12 * scale;
                for(int t = 0; t < 100; ++t)
                {
                    const Vector v = oracle::random_vector(space.ndof(), rng);
                    ok = ok && v.dot(s.matrix() * v) >= -1e-12 * scale * v.squaredNorm();
                }
            }
        return ok;
    }

    bool fluctuation_annihilation()
    {
        bool ok = true;
        for(int id : {1, 2, 3})
        {
            const auto spec = example(id);
            const auto mesh = build_structured_mesh(spec.domain, 8, MeshPattern::Crisscross);
            for(auto kind : kinds)
            {
                const FESpace space(mesh, kind);
                const auto s = assemble_glps(space, spec, params_for(kind, 0.1));
                const auto a = interpolate(space, [](const Point &x) { return 0.5 + 4.0 * x.x() - 2.0 * x.y(); });
                ok = ok && (s.matrix() * a.coefficients).cwiseAbs().maxCoeff() <= 1e-12;
            }
        }
        return ok;
    }

    bool discrete_coercivity()
    {
        std::mt19937 rng(77);
        bool ok = true;
        for(int id : {1, 2, 3})
        {
            const auto spec = example(id);
            const auto mesh = build_structured_mesh(spec.domain, 6, MeshPattern::Crisscross);
            for(auto kind : kinds)
            {
                const FESpace space(mesh, kind);
                const double beta = kind == SpaceKind::ConformingP1 ? spec.betaConforming : spec.betaNonconforming;
                const auto params = params_for(kind, beta);
                const auto sys = combine(assemble_galerkin(space, spec), assemble_glps(space, spec, params));
                for(int t = 0; t < 100; ++t)
                {
                    const Vector v = oracle::random_vector(space.ndof(), rng);
                    const FEFunction vh(space, v);
                    const auto n = lpsd_norm(space, spec, params, from_fe(vh));
                    const double lp2 = n.lp() * n.lp();
                    ok = ok && v.dot(sys.matrix() * v) >= lp2 * (1.0 - 1e-10);
                }
            }
        }
        return ok;
    }

    bool weak_continuity()
    {
        const auto mesh = build_structured_mesh({}, 5, MeshPattern::Crisscross);
        const FESpace cr(mesh, SpaceKind::CrouzeixRaviart);
        const auto rule = edge_rule(3);
        bool ok = true;
        for(Index dof = 0; dof < cr.ndof(); ++dof)
        {
            Vector c = Vector::Zero(cr.ndof());
            c(dof) = 1.0;
            const FEFunction phi(cr, c);
            for(Index e = 0; e < mesh.numEdges(); ++e)
            {
                if(mesh.edges[e].isBoundary())
                    continue;
                const auto tr = edge_jump_average(phi, e);
                double integral = 0.0;
                for(std::size_t q = 0; q < rule.size(); ++q)
                    integral += rule.weights[q] * tr.jump(rule.points[q]);
                ok = ok && std::abs(integral) <= 1e-14;
            }
        }
        return ok;
    }

    double consistency_residual()
    {
        const auto spec = example(1);
        const auto rules = AssemblyRules::ofDegree(8, 8);
        double worst = 0.0;
        for(auto kind : kinds)
        {
            const auto mesh = build_structured_mesh(spec.domain, 8, MeshPattern::Crisscross);
            const FESpace space(mesh, kind);
            const Vector r = load_vector(space, spec, rules) -
                             galerkin_action(space, spec, from_exact(*spec.exactSolution, *spec.exactGradient), rules);
            worst = std::max(worst, r.cwiseAbs().maxCoeff());
        }
        return worst;
    }

    double dense_oracle_difference()
    {
        const auto rule = triangle_rule(5);
        double worst = 0.0;
        for(int id : {1, 2, 3})
        {
            const auto spec = example(id);
            for(auto pattern : {MeshPattern::Right, MeshPattern::Crisscross})
            {
                const auto mesh = build_structured_mesh(spec.domain, pattern == MeshPattern::Right ? 4 : 2, pattern);
                for(auto kind : kinds)
                {
                    const FESpace space(mesh, kind);
                    const double beta = kind == SpaceKind::ConformingP1 ? spec.betaConforming : spec.betaNonconforming;
                    const auto params = params_for(kind, beta);
                    const Matrix s(assemble_glps(space, spec, params, rule).matrix());
                    const Matrix a(assemble_galerkin(space, spec).matrix());
                    worst = std::max(worst, max_abs(s - oracle::dense_stabilization(space, spec, params.mode, beta, rule)));
                    worst = std::max(worst, max_abs(a - oracle::dense_galerkin(space, spec, rule, edge_rule(5))));
                }
            }
        }
        return worst;
    }

    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    bool byte_identical_csv()
    {
        RunConfig config;
        config.levels = {4, 8, 16, 32};
        config.out = "acceptance_repeat.csv";
        run_convergence(config);
        const auto first = read_file(config.out);
        run_convergence(config);
        const auto second = read_file(config.out);
        std::remove(config.out.c_str());
        return !first.empty() && first == second;
    }

    void criterion6(Criterion &c)
    {
        const auto start = Clock::now();
        c.check(stabilization_symmetric_psd(), "stabilization symmetric (1e-12) and PSD on 100 random vectors");
        c.check(fluctuation_annihilation(), "S annihilates affine interpolants (1e-12)");
        c.check(discrete_coercivity(), "discrete coercivity on 100 random vectors, benchmarks 1-3, both spaces");
        c.check(weak_continuity(), "Crouzeix-Raviart weak continuity on every interior edge");
        const double residual = consistency_residual();
        c.check(residual <= 1e-10, fmt("consistency residual %.3e (<= 1e-10)", residual));
        const double oracle = dense_oracle_difference();
        c.check(oracle <= 1e-12, fmt("dense oracle max difference %.3e (<= 1e-12)", oracle));
        c.check(byte_identical_csv(), "byte-identical CSV on repeated runs");
        const double elapsed = seconds_since(start);
        c.check(elapsed < 30.0, fmt("property suite took %.1f s (< 30 s)", elapsed));
    }
}

int main()
{
    struct Entry
    {
        int id;
        const char *title;
        void (*run)(Criterion &);
    };
    const Entry entries[] = {
        {1, "smooth benchmark, conforming P1 + GLPS", criterion1},
        {2, "smooth benchmark, Crouzeix-Raviart + GLPS", criterion2},
        {3, "layer benchmark, asymptotic rates", criterion3},
        {4, "circular layer benchmark, averaged (N)LPSD rate", criterion4},
        {5, "discontinuous inflow, no oscillations away from the layer", criterion5},
        {6, "property suite", criterion6}};
    int failures = 0;
    for(const auto &entry : entries)
    {
        Criterion c{entry.id, entry.title};
        try
        {
            entry.run(c);
        }
        catch(const std::exception &e)
        {
            c.check(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %d: %s  %s\n", c.id, c.passed ? "PASS" : "FAIL", c.title.c_str());
        for(const auto &d : c.details)
            std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
        failures += c.passed ? 0 : 1;
    }
    const int total = static_cast<int>(std::size(entries));
    std::printf("%d of %d criteria passed\n", total - failures, total);
    return failures == 0 ? 0 : 1;
}
