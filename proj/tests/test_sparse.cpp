#include "doctest.h"

#include "glps/sparse_system.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

using namespace glps;

TEST_CASE("duplicate triplets are summed")
{
    SparseSystem s(3);
    s.add(0, 0, 1.0);
    s.add(0, 0, 2.5);
    s.add(2, 1, -1.0);
    const std::array<Index, 2> dofs{1, 2};
    Matrix block(2, 2);
    block << 1, 2, 3, 4;
    s.addBlock(dofs, block);
    CHECK(s.numTriplets() == 7);
    CHECK_THROWS_AS(s.matrix(), Error);
    s.finalize();
    const Matrix a(s.matrix());
    CHECK(a(0, 0) == 3.5);
    CHECK(a(1, 1) == 1.0);
    CHECK(a(1, 2) == 2.0);
    CHECK(a(2, 1) == 2.0);
    CHECK(a(2, 2) == 4.0);
    CHECK(s.matrix().nonZeros() == 5);
    CHECK_THROWS_AS(SparseSystem(2).add(2, 0, 1.0), Error);
}

TEST_CASE("finalize does not depend on insertion order")
{
    struct Entry
    {
        Index r, c;
        double v;
    };
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<Index> idx(0, 9);
    std::vector<Entry> entries;
    for(int i = 0; i < 2000; ++i)
        entries.push_back({idx(rng), idx(rng), dist(rng) * std::pow(10.0, idx(rng) - 5)});

    SparseSystem a(10);
    for(const auto &e : entries)
        a.add(e.r, e.c, e.v);
    a.finalize();
    for(int trial = 0; trial < 5; ++trial)
    {
        std::shuffle(entries.begin(), entries.end(), rng);
        SparseSystem b(10);
        for(const auto &e : entries)
            b.add(e.r, e.c, e.v);
        b.finalize();
        REQUIRE(b.matrix().nonZeros() == a.matrix().nonZeros());
        CHECK(std::equal(a.matrix().valuePtr(), a.matrix().valuePtr() + a.matrix().nonZeros(),
                         b.matrix().valuePtr()));
    }
}

TEST_CASE("combine sums matrices and keeps the first rhs")
{
    SparseSystem a(2), s(2);
    a.add(0, 0, 1.0);
    a.add(1, 0, 2.0);
    a.rhs() << 5.0, 6.0;
    s.add(0, 0, 0.5);
    s.add(1, 1, 3.0);
    s.rhs() << 100.0, 100.0;
    a.finalize();
    s.finalize();
    const auto c = combine(a, s);
    const Matrix m(c.matrix());
    CHECK(m(0, 0) == 1.5);
    CHECK(m(1, 0) == 2.0);
    CHECK(m(1, 1) == 3.0);
    CHECK(c.rhs()(1) == 6.0);

    SparseSystem other(3);
    other.finalize();
    CHECK_THROWS_AS(combine(a, other), Error);
}

TEST_CASE("MatrixMarket round trip")
{
    SparseMatrix m(3, 3);
    m.insert(0, 0) = 1.0 / 3.0;
    m.insert(1, 2) = -2.5e-17;
    m.insert(2, 1) = 12345.6789;
    m.makeCompressed();
    Vector v(3);
    v << 0.1, -1.0 / 7.0, 1e300;
    write_matrix_market("roundtrip_matrix.mtx", m);
    write_vector_market("roundtrip_rhs.mtx", v);
    const auto m2 = read_matrix_market("roundtrip_matrix.mtx");
    const auto v2 = read_vector_market("roundtrip_rhs.mtx");
    CHECK(Matrix(m2) == Matrix(m));
    CHECK(v2 == v);
    std::remove("roundtrip_matrix.mtx");
    std::remove("roundtrip_rhs.mtx");
    CHECK_THROWS_AS(read_matrix_market("missing.mtx"), Error);
}
