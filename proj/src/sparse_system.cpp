#include "glps/sparse_system.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace glps
{
    SparseSystem::SparseSystem(Index n)
        : n_(n), rhs_(Vector::Zero(n)), matrix_(n, n)
    {
        if(n < 1)
            throw Error("SparseSystem: size must be positive");
    }

    void SparseSystem::add(Index row, Index col, double value)
    {
        if(finalized_)
            throw Error("SparseSystem::add: system already finalized");
        if(row < 0 || row >= n_ || col < 0 || col >= n_)
            throw Error("SparseSystem::add: index out of range");
        triplets_.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
    }

    void SparseSystem::addBlock(std::span<const Index> dofs, const Matrix &block)
    {
        const auto m = static_cast<Index>(dofs.size());
        if(block.rows() != m || block.cols() != m)
            throw Error("SparseSystem::addBlock: block size does not match DOF list");
        for(Index i = 0; i < m; ++i)
            for(Index j = 0; j < m; ++j)
                add(dofs[i], dofs[j], block(i, j));
    }

    void SparseSystem::finalize()
    {
        if(finalized_)
            return;
        std::sort(triplets_.begin(), triplets_.end(), [](const auto &a, const auto &b) {
            if(a.row() != b.row())
                return a.row() < b.row();
            if(a.col() != b.col())
                return a.col() < b.col();
            return a.value() < b.value();
        });

        Eigen::VectorXi perRow = Eigen::VectorXi::Zero(n_);
        for(std::size_t t = 0; t < triplets_.size(); ++t)
            if(t == 0 || triplets_[t].row() != triplets_[t - 1].row() || triplets_[t].col() != triplets_[t - 1].col())
                ++perRow(triplets_[t].row());

        matrix_.resize(n_, n_);
        matrix_.reserve(perRow);
        std::size_t t = 0;
        while(t < triplets_.size())
        {
            const int r = triplets_[t].row(), c = triplets_[t].col();
            double sum = 0.0;
            for(; t < triplets_.size() && triplets_[t].row() == r && triplets_[t].col() == c; ++t)
                sum += triplets_[t].value();
            matrix_.insert(r, c) = sum;
        }
        matrix_.makeCompressed();
        triplets_.clear();
        triplets_.shrink_to_fit();
        finalized_ = true;
    }

    const SparseMatrix &SparseSystem::matrix() const
    {
        if(!finalized_)
            throw Error("SparseSystem::matrix: call finalize() first");
        return matrix_;
    }

    SparseSystem SparseSystem::fromMatrix(SparseMatrix matrix, Vector rhs)
    {
        if(matrix.rows() != matrix.cols() || rhs.size() != matrix.rows())
            throw Error("SparseSystem::fromMatrix: inconsistent dimensions");
        SparseSystem sys(matrix.rows());
        matrix.makeCompressed();
        sys.matrix_ = std::move(matrix);
        sys.rhs_ = std::move(rhs);
        sys.finalized_ = true;
        return sys;
    }

    SparseSystem combine(const SparseSystem &a, const SparseSystem &s)
    {
        if(a.size() != s.size())
            throw Error("combine: dimension mismatch");
        SparseMatrix sum = a.matrix() + s.matrix();
        return SparseSystem::fromMatrix(std::move(sum), a.rhs());
    }

    void write_matrix_market(const std::string &path, const SparseMatrix &matrix)
    {
        std::ofstream out(path);
        if(!out)
            throw Error("cannot write '" + path + "'");
        out << "%%MatrixMarket matrix coordinate real general\n";
        out << matrix.rows() << ' ' << matrix.cols() << ' ' << matrix.nonZeros() << '\n';
        char buf[64];
        for(Index r = 0; r < matrix.outerSize(); ++r)
            for(SparseMatrix::InnerIterator it(matrix, r); it; ++it)
            {
                std::snprintf(buf, sizeof buf, "%.17g", it.value());
                out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << buf << '\n';
            }
    }

    void write_vector_market(const std::string &path, const Vector &v)
    {
        std::ofstream out(path);
        if(!out)
            throw Error("cannot write '" + path + "'");
        out << "%%MatrixMarket matrix array real general\n";
        out << v.size() << " 1\n";
        char buf[64];
        for(Index i = 0; i < v.size(); ++i)
        {
            std::snprintf(buf, sizeof buf, "%.17g", v(i));
            out << buf << '\n';
        }
    }

    namespace
    {
        std::ifstream open_market(const std::string &path, const std::string &expected)
        {
            std::ifstream in(path);
            if(!in)
                throw Error("cannot open '" + path + "'");
            std::string header;
            std::getline(in, header);
            if(header.rfind(expected, 0) != 0)
                throw Error("'" + path + "' is not a MatrixMarket " + expected.substr(22) + " file");
            // Skip comment lines.
            while(in.peek() == '%')
                std::getline(in, header);
            return in;
        }
    }

    SparseMatrix read_matrix_market(const std::string &path)
    {
        auto in = open_market(path, "%%MatrixMarket matrix coordinate real");
        Index rows = 0, cols = 0, nnz = 0;
        in >> rows >> cols >> nnz;
        std::vector<Eigen::Triplet<double>> entries;
        entries.reserve(static_cast<std::size_t>(nnz));
        for(Index k = 0; k < nnz; ++k)
        {
            Index r = 0, c = 0;
            double v = 0.0;
            if(!(in >> r >> c >> v))
                throw Error("'" + path + "': truncated entry list");
            entries.emplace_back(r - 1, c - 1, v);
        }
        SparseMatrix m(rows, cols);
        m.setFromTriplets(entries.begin(), entries.end());
        return m;
    }

    Vector read_vector_market(const std::string &path)
    {
        auto in = open_market(path, "%%MatrixMarket matrix array real");
        Index rows = 0, cols = 0;
        in >> rows >> cols;
        if(cols != 1)
            throw Error("'" + path + "': expected a single column");
        Vector v(rows);
        for(Index i = 0; i < rows; ++i)
            if(!(in >> v(i)))
                throw Error("'" + path + "': truncated vector");
        return v;
    }
}
