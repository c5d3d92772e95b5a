#include "fptm/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "fptm/errors.hpp"

namespace fptm {

namespace {

void swap_rows(IntMatrix& M, int a, int b) { M.row(a).swap(M.row(b)); }

}  // namespace

IntMatrix row_hermite_basis(const IntMatrix& M_in) {
    IntMatrix M = M_in;
    const int rows = static_cast<int>(M.rows());
    const int cols = static_cast<int>(M.cols());
    int pivot_row = 0;
    for (int col = 0; col < cols && pivot_row < rows; ++col) {
        // Euclidean elimination in this column below pivot_row.
        while (true) {
            int best = -1;
            std::int64_t best_abs = 0;
            for (int r = pivot_row; r < rows; ++r) {
                std::int64_t a = std::llabs(M(r, col));
                if (a != 0 && (best < 0 || a < best_abs)) {
                    best = r;
                    best_abs = a;
                }
            }
            if (best < 0) break;  // column clear
            swap_rows(M, pivot_row, best);
            bool clean = true;
            for (int r = pivot_row + 1; r < rows; ++r) {
                if (M(r, col) == 0) continue;
                std::int64_t q = M(r, col) / M(pivot_row, col);
                M.row(r) -= q * M.row(pivot_row);
                if (M(r, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (pivot_row < rows && M(pivot_row, col) != 0) {
            if (M(pivot_row, col) < 0) M.row(pivot_row) = -M.row(pivot_row);
            // Reduce entries above the pivot.
            for (int r = 0; r < pivot_row; ++r) {
                std::int64_t q = M(r, col) / M(pivot_row, col);
                if (M(r, col) % M(pivot_row, col) < 0) q -= 1;  // floor division
                if (q != 0) M.row(r) -= q * M.row(pivot_row);
            }
            ++pivot_row;
        }
    }
    IntMatrix basis(pivot_row, cols);
    for (int r = 0; r < pivot_row; ++r) basis.row(r) = M.row(r);
    return basis;
}

SmithResult smith_normal_form(const IntMatrix& M_in) {
    SmithResult res;
    const int m = static_cast<int>(M_in.rows());
    const int n = static_cast<int>(M_in.cols());
    res.S = M_in;
    res.U = IntMatrix::Identity(m, m);
    res.V = IntMatrix::Identity(n, n);
    res.Vinv = IntMatrix::Identity(n, n);
    IntMatrix& S = res.S;

    auto row_op = [&](int dst, int src, std::int64_t q) {
        // row dst -= q * row src
        S.row(dst) -= q * S.row(src);
        res.U.row(dst) -= q * res.U.row(src);
    };
    auto col_op = [&](int dst, int src, std::int64_t q) {
        // col dst -= q * col src;  V tracks it, Vinv tracks the inverse op.
        S.col(dst) -= q * S.col(src);
        res.V.col(dst) -= q * res.V.col(src);
        res.Vinv.row(src) += q * res.Vinv.row(dst);
    };
    auto row_swap = [&](int a, int b) {
        S.row(a).swap(S.row(b));
        res.U.row(a).swap(res.U.row(b));
    };
    auto col_swap = [&](int a, int b) {
        S.col(a).swap(S.col(b));
        res.V.col(a).swap(res.V.col(b));
        res.Vinv.row(a).swap(res.Vinv.row(b));
    };
    auto row_negate = [&](int a) {
        S.row(a) = -S.row(a);
        res.U.row(a) = -res.U.row(a);
    };

    const int t = std::min(m, n);
    for (int k = 0; k < t; ++k) {
        // Find a nonzero pivot in the trailing block.
        int pr = -1, pc = -1;
        std::int64_t best = 0;
        for (int i = k; i < m; ++i)
            for (int j = k; j < n; ++j) {
                std::int64_t a = std::llabs(S(i, j));
                if (a != 0 && (pr < 0 || a < best)) {
                    pr = i;
                    pc = j;
                    best = a;
                }
            }
        if (pr < 0) break;
        if (pr != k) row_swap(k, pr);
        if (pc != k) col_swap(k, pc);

        bool again = true;
        while (again) {
            again = false;
            for (int i = k + 1; i < m; ++i) {
                if (S(i, k) == 0) continue;
                std::int64_t q = S(i, k) / S(k, k);
                row_op(i, k, q);
                if (S(i, k) != 0) {
                    row_swap(k, i);
                    again = true;
                }
            }
            for (int j = k + 1; j < n; ++j) {
                if (S(k, j) == 0) continue;
                std::int64_t q = S(k, j) / S(k, k);
                col_op(j, k, q);
                if (S(k, j) != 0) {
                    col_swap(k, j);
                    again = true;
                }
            }
        }
        if (S(k, k) < 0) row_negate(k);
    }
    // Fix divisibility d_k | d_{k+1}.
    for (int k = 0; k + 1 < t; ++k) {
        if (S(k, k) == 0) continue;
        for (int j = k + 1; j < t; ++j) {
            if (S(j, j) % S(k, k) == 0) continue;
            // Add column j to column k, then re-diagonalize the 2x2 block.
            col_op(k, j, -1);
            while (true) {
                bool done = true;
                if (S(j, k) != 0) {
                    std::int64_t q = S(j, k) / S(k, k);
                    row_op(j, k, q);
                    if (S(j, k) != 0) {
                        row_swap(k, j);
                        done = false;
                    }
                }
                if (S(k, j) != 0) {
                    std::int64_t q = S(k, j) / S(k, k);
                    col_op(j, k, q);
                    if (S(k, j) != 0) {
                        col_swap(k, j);
                        done = false;
                    }
                }
                if (done) break;
            }
            if (S(k, k) < 0) row_negate(k);
            if (S(j, j) < 0) row_negate(j);
        }
    }
    return res;
}

std::int64_t det_integer(const IntMatrix& M_in) {
    const int n = static_cast<int>(M_in.rows());
    if (n != M_in.cols()) throw std::invalid_argument("det_integer: square matrix required");
    if (n == 0) return 1;
    IntMatrix M = M_in;
    std::int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M(k, k) == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (M(r, k) != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0) return 0;
            M.row(k).swap(M.row(swap));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

IntMatrix int_inverse_unimodular(const IntMatrix& M) {
    const int n = static_cast<int>(M.rows());
    std::int64_t d = det_integer(M);
    if (d != 1 && d != -1)
        throw std::invalid_argument("int_inverse_unimodular: |det| != 1");
    IntMatrix adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = M(r, c);
                }
                ++rr;
            }
            std::int64_t cof = det_integer(minor);
            if ((i + j) % 2 != 0) cof = -cof;
            adj(j, i) = cof;  // adjugate transposes the cofactor matrix
        }
    return d == 1 ? adj : IntMatrix(-adj);
}

IntMatrix unimodular_completion(const IntMatrix& B) {
    const int nrel = static_cast<int>(B.rows());
    const int d = static_cast<int>(B.cols());
    if (nrel == 0 || nrel > d)
        throw std::invalid_argument("unimodular_completion: bad basis shape");

    SmithResult snf = smith_normal_form(B);
    for (int k = 0; k < nrel; ++k) {
        if (snf.S(k, k) != 1)
            throw NonSaturatedModule(
                "relation lattice has elementary divisor " + std::to_string(snf.S(k, k)) +
                "; no unimodular completion of the required form exists");
    }

    // B = U^{-1} [I 0] Vinv, so B = Uinv * (first nrel rows of Vinv).  Use B
    // itself as the bottom block and the remaining Vinv rows as completion.
    const int r = d - nrel;
    IntMatrix Uinv = int_inverse_unimodular(snf.U);
    IntMatrix A(d, d);
    for (int i = 0; i < r; ++i) A.row(i) = snf.Vinv.row(nrel + i);
    A.bottomRows(nrel) = Uinv * snf.Vinv.topRows(nrel);
    if (A.bottomRows(nrel) != B)
        throw std::logic_error("unimodular_completion: bottom block mismatch");

    std::int64_t det = det_integer(A);
    if (det != 1 && det != -1)
        throw std::logic_error("unimodular_completion: completion lost unimodularity");
    if (det == -1) {
        if (r >= 2) {
            A.row(0).swap(A.row(1));
        } else if (r == 1) {
            A.row(0) = -A.row(0);
        } else {
            A.row(d - 1) = -A.row(d - 1);
        }
    }
    return A;
}

}  // namespace fptm
