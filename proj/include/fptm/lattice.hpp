#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace fptm {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Basis of the lattice spanned by the rows of M, in row-style Hermite normal
// form (zero rows removed, pivots positive, entries above pivots reduced).
IntMatrix row_hermite_basis(const IntMatrix& M);

// U * M * V = S with U, V unimodular and S diagonal (Smith normal form,
// diagonal entries non-negative).  Vinv is tracked exactly.
struct SmithResult {
    IntMatrix U;
    IntMatrix V;
    IntMatrix Vinv;
    IntMatrix S;
};
SmithResult smith_normal_form(const IntMatrix& M);

// Exact determinant (Bareiss).  Intended for small matrices.
std::int64_t det_integer(const IntMatrix& M);

// Exact inverse of a matrix with det = +-1.
IntMatrix int_inverse_unimodular(const IntMatrix& M);

// Completes a full-row-rank basis B ((d-r) x d) of a saturated lattice to
// A in GL(d, Z) whose last d-r rows span the same lattice, det(A) = +1.
// Throws NonSaturatedModule when the lattice has an elementary divisor > 1.
IntMatrix unimodular_completion(const IntMatrix& B);

}  // namespace fptm
