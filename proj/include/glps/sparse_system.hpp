#ifndef GLPS_SPARSE_SYSTEM_HPP
#define GLPS_SPARSE_SYSTEM_HPP

#include "glps/types.hpp"

#include <Eigen/SparseCore>

#include <span>
#include <string>
#include <vector>

namespace glps
{
    using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

    /// Square sparse system in triplet form. finalize() sorts the triplets by
    /// (row, col, value) and sums duplicates, so the compressed matrix does not
    /// depend on insertion order.
    class SparseSystem
    {
    public:
        explicit SparseSystem(Index n);

        Index size() const { return n_; }
        bool finalized() const { return finalized_; }

        void add(Index row, Index col, double value);

        /// Scatter-add a dense local block: A(dofs[i], dofs[j]) += block(i, j).
        void addBlock(std::span<const Index> dofs, const Matrix &block);

        Vector &rhs() { return rhs_; }
        const Vector &rhs() const { return rhs_; }

        std::size_t numTriplets() const { return triplets_.size(); }

        void finalize();

        /// Compressed-row matrix; requires finalize().
        const SparseMatrix &matrix() const;

        /// Builds an already finalized system.
        static SparseSystem fromMatrix(SparseMatrix matrix, Vector rhs);

    private:
        Index n_;
        std::vector<Eigen::Triplet<double, int>> triplets_;
        Vector rhs_;
        SparseMatrix matrix_;
        bool finalized_ = false;
    };

    /// Entrywise sum of two finalized systems; the rhs is taken from a.
    SparseSystem combine(const SparseSystem &a, const SparseSystem &s);

    /// MatrixMarket coordinate format, 17 significant digits.
    void write_matrix_market(const std::string &path, const SparseMatrix &matrix);
    /// MatrixMarket array format for a column vector.
    void write_vector_market(const std::string &path, const Vector &v);
    SparseMatrix read_matrix_market(const std::string &path);
    Vector read_vector_market(const std::string &path);
}

#endif
