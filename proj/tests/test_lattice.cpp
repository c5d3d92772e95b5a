#include "doctest.h"

#include "fptm/errors.hpp"
#include "fptm/lattice.hpp"

using namespace fptm;

TEST_CASE("row hermite basis reduces generating sets") {
    IntMatrix M(3, 2);
    M << 2, 4, 3, 6, 1, 2;  // all multiples of (1, 2)
    IntMatrix B = row_hermite_basis(M);
    REQUIRE(B.rows() == 1);
    CHECK(B(0, 0) == 1);
    CHECK(B(0, 1) == 2);
}

TEST_CASE("row hermite basis keeps rank") {
    IntMatrix M(2, 3);
    M << 0, 1, 0, 2, -1, 0;
    IntMatrix B = row_hermite_basis(M);
    REQUIRE(B.rows() == 2);
    // Same lattice: both original rows must be integer combos of the basis.
    // With 2x3 HNF the pivots make this directly checkable by solving.
    Eigen::Matrix2d P;
    P << static_cast<double>(B(0, 0)), static_cast<double>(B(1, 0)),
        static_cast<double>(B(0, 1)), static_cast<double>(B(1, 1));
    // just sanity: determinant of pivot block nonzero
    CHECK(P.determinant() != 0.0);
}

TEST_CASE("smith normal form diagonalizes with unimodular factors") {
    IntMatrix M(2, 3);
    M << 2, 4, 4, -6, 6, 12;
    SmithResult s = smith_normal_form(M);
    IntMatrix left = s.U * M * s.V;
    CHECK(left == s.S);
    CHECK(std::abs(det_integer(s.U)) == 1);
    CHECK(std::abs(det_integer(s.V)) == 1);
    CHECK((s.V * s.Vinv) == IntMatrix(IntMatrix::Identity(3, 3)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(s.S(i, j) == 0);
    // divisibility d0 | d1
    REQUIRE(s.S(0, 0) != 0);
    CHECK(s.S(1, 1) % s.S(0, 0) == 0);
}

TEST_CASE("integer determinant and unimodular inverse") {
    IntMatrix A(3, 3);
    A << 1, 2, 3, 0, 1, 4, 0, 0, 1;
    CHECK(det_integer(A) == 1);
    IntMatrix Ainv = int_inverse_unimodular(A);
    CHECK((A * Ainv) == IntMatrix(IntMatrix::Identity(3, 3)));
}

TEST_CASE("unimodular completion puts the lattice in the last rows") {
    IntMatrix B(1, 2);
    B << 2, -1;
    IntMatrix A = unimodular_completion(B);
    CHECK(det_integer(A) == 1);
    CHECK(A(1, 0) == 2);
    CHECK(A(1, 1) == -1);
}

TEST_CASE("non-saturated lattice is rejected") {
    IntMatrix B(1, 2);
    B << 2, 0;  // elementary divisor 2
    CHECK_THROWS_AS(unimodular_completion(B), NonSaturatedModule);
}

TEST_CASE("completion works in dimension 3") {
    IntMatrix B(1, 3);
    B << 3, 5, 7;  // gcd 1, saturated
    IntMatrix A = unimodular_completion(B);
    CHECK(det_integer(A) == 1);
    CHECK(A.row(2)(0) == 3);
    CHECK(A.row(2)(1) == 5);
    CHECK(A.row(2)(2) == 7);
}
