#ifndef GLPS_SOLVE_HPP
#define GLPS_SOLVE_HPP

#include "glps/sparse_system.hpp"

#include <string>

namespace glps
{
    struct SolveReport
    {
        Vector solution;
        /// ||A x - b||_2 / ||b||_2 (absolute residual when b = 0).
        double relativeResidual = 0.0;
        /// 0 for the direct path.
        Index iterations = 0;
        std::string method;
    };

    /// Solver breakdown or non-convergence; carries the best iterate found.
    class SolveError : public Error
    {
    public:
        SolveError(const std::string &what, double bestResidual)
            : Error(what), bestResidual_(bestResidual)
        { }

        double bestResidual() const { return bestResidual_; }

    private:
        double bestResidual_;
    };

    struct SolveOptions
    {
        double tolerance = 1e-12;
        /// Skip the direct factorization and go straight to GMRES.
        bool iterativeOnly = false;
        int restart = 50;
    };

    double relative_residual(const SparseMatrix &a, const Vector &x, const Vector &b);

    /// Sparse LU with partial pivoting, refined iteratively; falls back to
    /// ILUT-preconditioned restarted GMRES (cap 10 n iterations) when the
    /// factorization fails or misses the tolerance.
    SolveReport solve(const SparseSystem &system, const SolveOptions &options = {});
}

#endif
