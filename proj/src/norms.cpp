#include "glps/norms.hpp"

#include <cmath>

namespace glps
{
    double ErrorReport::lp() const
    {
        return std::sqrt(reactionTerm + boundaryTerm + stabilizationTerm + jumpTerm);
    }

    double ErrorReport::lpsd() const
    {
        return std::sqrt(streamlineTerm + reactionTerm + boundaryTerm + stabilizationTerm + jumpTerm);
    }

    namespace
    {
        template<typename F>
        double integrate_all(const Mesh &mesh, const TriangleRule<double> &rule, F &&f)
        {
            double sum = 0.0;
            for(Index k = 0; k < mesh.numCells(); ++k)
                sum += integrate_cell(mesh, k, [&](const Point &x) { return f(k, x); }, rule);
            return sum;
        }

        CellwiseFunction error_function(const FEFunction &uh, const ProblemSpec &spec)
        {
            if(!spec.hasExactSolution())
                throw Error("error norms need an exact solution and gradient");
            return difference(from_exact(*spec.exactSolution, *spec.exactGradient), from_fe(uh));
        }
    }

    double l2_norm(const Mesh &mesh, const CellwiseFunction &e, const TriangleRule<double> &rule)
    {
        return std::sqrt(integrate_all(mesh, rule, [&](Index k, const Point &x) {
            const double v = e.value(k, x);
            return v * v;
        }));
    }

    double h1_seminorm(const Mesh &mesh, const CellwiseFunction &e, const TriangleRule<double> &rule)
    {
        return std::sqrt(integrate_all(mesh, rule, [&](Index k, const Point &x) { return e.gradient(k, x).squaredNorm(); }));
    }

    double error_l2(const FEFunction &uh, const std::optional<ScalarField> &exact, const TriangleRule<double> &rule)
    {
        if(!exact)
            throw Error("error_l2: no exact solution");
        const auto u = *exact;
        return l2_norm(uh.space->mesh(),
                       {[&](Index k, const Point &x) { return u(x) - uh.value(k, x); }, {}},
                       rule);
    }

    double error_h1_semi(const FEFunction &uh, const std::optional<VectorField> &exactGradient,
                         const TriangleRule<double> &rule)
    {
        if(!exactGradient)
            throw Error("error_h1_semi: no exact gradient");
        const auto g = *exactGradient;
        return h1_seminorm(uh.space->mesh(),
                           {{}, [&](Index k, const Point &x) { return Point(g(x) - uh.gradient(k)); }},
                           rule);
    }

    ErrorReport lpsd_norm(const FESpace &space, const ProblemSpec &spec, const StabilizationParams &params,
                          const CellwiseFunction &e, const NormRules &rules)
    {
        const Mesh &mesh = space.mesh();
        ErrorReport report;
        report.nonconforming = space.kind() == SpaceKind::CrouzeixRaviart;

        const auto streamline = [&](Index k, const Point &x) { return spec.velocity(x).dot(e.gradient(k, x)); };

        double l2sq = 0.0, h1sq = 0.0, sd = 0.0;
        for(Index k = 0; k < mesh.numCells(); ++k)
        {
            const double jac = 2.0 * mesh.cellAreas[k];
            double cl2 = 0.0, ch1 = 0.0, csd = 0.0;
            for(std::size_t q = 0; q < rules.cell.size(); ++q)
            {
                const Point x = map_to_cell(mesh, k, rules.cell.points[q]);
                const double v = e.value(k, x);
                const Point g = e.gradient(k, x);
                const double s = spec.velocity(x).dot(g);
                const double w = rules.cell.weights[q] * jac;
                cl2 += w * v * v;
                ch1 += w * g.squaredNorm();
                csd += w * s * s;
            }
            l2sq += cl2;
            h1sq += ch1;
            sd += mesh.cellDiameters[k] * csd;
        }
        report.errL2 = std::sqrt(l2sq);
        report.errH1 = std::sqrt(h1sq);
        report.reactionTerm = spec.alpha * l2sq;
        report.streamlineTerm = sd;

        for(Index ei = 0; ei < mesh.numEdges(); ++ei)
        {
            const Edge &edge = mesh.edges[ei];
            if(edge.isBoundary())
            {
                report.boundaryTerm += integrate_edge(mesh, ei, [&](const Point &x) {
                    const double v = e.value(edge.plusCell, x);
                    return 0.5 * std::abs(spec.velocity(x).dot(edge.normal)) * v * v;
                }, rules.edge);
            }
            else if(report.nonconforming)
            {
                report.jumpTerm += integrate_edge(mesh, ei, [&](const Point &x) {
                    const double jump = e.value(edge.plusCell, x) - e.value(*edge.minusCell, x);
                    return 0.5 * std::abs(spec.velocity(x).dot(edge.normal)) * jump * jump;
                }, rules.edge);
            }
        }

        const auto patches = stabilization_patches(mesh, spec, params, rules.cell);
        report.stabilizationTerm = stabilization_energy(mesh, patches, streamline, rules.cell);
        return report;
    }

    ErrorReport error_lpsd(const FEFunction &uh, const ProblemSpec &spec, const StabilizationParams &params,
                           const NormRules &rules)
    {
        return lpsd_norm(*uh.space, spec, params, error_function(uh, spec), rules);
    }

    std::vector<std::optional<double>> eoc(const std::vector<double> &errors, const std::vector<double> &hs)
    {
        if(errors.size() != hs.size())
            throw Error("eoc: errors and mesh sizes differ in length");
        std::vector<std::optional<double>> rates(errors.size());
        for(std::size_t k = 1; k < errors.size(); ++k)
        {
            if(!(hs[k] > 0.0) || !(hs[k - 1] > 0.0))
                throw Error("eoc: mesh sizes must be positive");
            if(errors[k] > 0.0 && errors[k - 1] > 0.0)
                rates[k] = std::log(errors[k - 1] / errors[k]) / std::log(hs[k - 1] / hs[k]);
        }
        return rates;
    }

    void ConvergenceReport::computeRates()
    {
        std::vector<double> h, l2, h1, lpsd;
        for(const auto &r : rows)
        {
            h.push_back(r.h);
            l2.push_back(r.errL2);
            h1.push_back(r.errH1);
            lpsd.push_back(r.errLpsd);
        }
        const auto rl2 = eoc(l2, h), rh1 = eoc(h1, h), rlpsd = eoc(lpsd, h);
        for(std::size_t k = 0; k < rows.size(); ++k)
        {
            rows[k].eocL2 = rl2[k];
            rows[k].eocH1 = rh1[k];
            rows[k].eocLpsd = rlpsd[k];
        }
    }
}
