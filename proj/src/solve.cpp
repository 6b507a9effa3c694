#include "glps/solve.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace glps
{
    double relative_residual(const SparseMatrix &a, const Vector &x, const Vector &b)
    {
        const double r = (a * x - b).norm();
        const double bn = b.norm();
        return bn > 0.0 ? r / bn : r;
    }

    namespace
    {
        using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

        bool solve_direct(const ColMatrix &a, const SparseMatrix &rows, const Vector &b, double tol, SolveReport &report)
        {
            Eigen::SparseLU<ColMatrix, Eigen::COLAMDOrdering<int>> lu;
            lu.analyzePattern(a);
            lu.factorize(a);
            if(lu.info() != Eigen::Success)
                return false;
            Vector x = lu.solve(b);
            if(lu.info() != Eigen::Success || !x.allFinite())
                return false;
            double res = relative_residual(rows, x, b);
            // A couple of refinement sweeps recover the last digits on
            // poorly scaled systems.
            for(int sweep = 0; sweep < 3 && res > tol; ++sweep)
            {
                const Vector r = b - rows * x;
                x += lu.solve(r);
                res = relative_residual(rows, x, b);
            }
            report.solution = std::move(x);
            report.relativeResidual = res;
            report.iterations = 0;
            report.method = "sparse-lu";
            return res <= tol;
        }

        void solve_gmres(const ColMatrix &a, const SparseMatrix &rows, const Vector &b, const SolveOptions &options,
                         SolveReport &report)
        {
            Eigen::GMRES<ColMatrix, Eigen::IncompleteLUT<double>> gmres;
            gmres.set_restart(options.restart);
            gmres.setMaxIterations(10 * a.rows());
            gmres.setTolerance(options.tolerance);
            gmres.preconditioner().setDroptol(1e-6);
            gmres.compute(a);
            if(gmres.info() != Eigen::Success)
                throw SolveError("solve: incomplete factorization failed", report.relativeResidual);
            const Vector x = gmres.solve(b);
            const double res = x.allFinite() ? relative_residual(rows, x, b) : std::numeric_limits<double>::infinity();
            if(res < report.relativeResidual || report.solution.size() == 0)
            {
                report.solution = x;
                report.relativeResidual = res;
                report.iterations = gmres.iterations();
                report.method = "gmres-ilut";
            }
            if(!(res <= options.tolerance))
                throw SolveError("solve: GMRES did not reach the tolerance", report.relativeResidual);
        }
    }

    SolveReport solve(const SparseSystem &system, const SolveOptions &options)
    {
        const SparseMatrix &rows = system.matrix();
        const Vector &b = system.rhs();
        const ColMatrix a = rows;

        SolveReport report;
        report.relativeResidual = std::numeric_limits<double>::infinity();
        if(b.norm() == 0.0)
        {
            report.solution = Vector::Zero(system.size());
            report.relativeResidual = 0.0;
            report.method = "trivial";
            return report;
        }
        if(!options.iterativeOnly && solve_direct(a, rows, b, options.tolerance, report))
            return report;
        solve_gmres(a, rows, b, options, report);
        return report;
    }
}
