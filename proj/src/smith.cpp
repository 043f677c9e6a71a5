#include "shl/smith.hpp"

#include <algorithm>

namespace shl {

namespace {

size_t rows(const IntMat& A) { return A.size(); }
size_t cols(const IntMat& A) { return A.empty() ? 0 : A[0].size(); }

IntMat identity(size_t n) {
    IntMat I(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// row_op: A[r1] += q * A[r2], mirrored in U
void add_row(IntMat& A, IntMat& U, size_t r1, size_t r2, const Int& q) {
    for (size_t j = 0; j < cols(A); ++j) A[r1][j] += q * A[r2][j];
    for (size_t j = 0; j < cols(U); ++j) U[r1][j] += q * U[r2][j];
}

void add_col(IntMat& A, IntMat& V, size_t c1, size_t c2, const Int& q) {
    for (size_t i = 0; i < rows(A); ++i) A[i][c1] += q * A[i][c2];
    for (size_t i = 0; i < rows(V); ++i) V[i][c1] += q * V[i][c2];
}

void swap_rows(IntMat& A, IntMat& U, size_t r1, size_t r2) {
    std::swap(A[r1], A[r2]);
    std::swap(U[r1], U[r2]);
}

void swap_cols(IntMat& A, IntMat& V, size_t c1, size_t c2) {
    for (size_t i = 0; i < rows(A); ++i) std::swap(A[i][c1], A[i][c2]);
    for (size_t i = 0; i < rows(V); ++i) std::swap(V[i][c1], V[i][c2]);
}

void negate_row(IntMat& A, IntMat& U, size_t r) {
    for (auto& x : A[r]) x = -x;
    for (auto& x : U[r]) x = -x;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& A0) {
    IntMat A = A0;
    size_t m = rows(A), n = cols(A);
    for (const auto& row : A)
        if (row.size() != n) throw error("ragged matrix");
    IntMat U = identity(m), V = identity(n);
    size_t t = 0;
    size_t lim = std::min(m, n);
    while (t < lim) {
        // locate a pivot of least absolute value in the trailing block
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j)
                if (A[i][j] != 0 &&
                    (!found || abs(A[i][j]) < abs(A[pi][pj]))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        swap_rows(A, U, t, pi);
        swap_cols(A, V, t, pj);
        // clear row and column t; restarts when remainders appear
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (A[i][t] == 0) continue;
                Int q = A[i][t] / A[t][t];
                add_row(A, U, i, t, -q);
                if (A[i][t] != 0) {  // remainder becomes the smaller pivot
                    swap_rows(A, U, t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (A[t][j] == 0) continue;
                Int q = A[t][j] / A[t][t];
                add_col(A, V, j, t, -q);
                if (A[t][j] != 0) {
                    swap_cols(A, V, t, j);
                    clean = false;
                }
            }
        }
        // enforce divisibility of the trailing block by the pivot
        bool divides = true;
        for (size_t i = t + 1; i < m && divides; ++i)
            for (size_t j = t + 1; j < n && divides; ++j)
                if (A[i][j] % A[t][t] != 0) {
                    add_row(A, U, t, i, 1);
                    divides = false;
                }
        if (!divides) continue;  // redo the clearing with the merged row
        if (A[t][t] < 0) negate_row(A, U, t);
        ++t;
    }
    SmithResult r;
    r.U = std::move(U);
    r.V = std::move(V);
    r.diag.resize(lim, 0);
    for (size_t i = 0; i < lim; ++i) r.diag[i] = A[i][i];
    return r;
}

IntVec mat_vec(const IntMat& A, const IntVec& x) {
    IntVec y(rows(A), 0);
    for (size_t i = 0; i < rows(A); ++i) {
        if (A[i].size() != x.size()) throw error("dimension mismatch");
        for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
    }
    return y;
}

IntSolveResult solve_integer(const IntMat& A, const IntVec& b) {
    size_t m = rows(A), n = cols(A);
    if (b.size() != m) throw error("dimension mismatch");
    SmithResult s = smith_normal_form(A);
    IntVec ub = mat_vec(s.U, b);
    IntSolveResult out;

    IntVec y(n, 0);
    bool ok = true;
    for (size_t i = 0; i < m && ok; ++i) {
        Int d = i < s.diag.size() ? s.diag[i] : Int(0);
        if (d == 0) {
            if (ub[i] != 0) {
                out.cert_u = s.U[i];
                out.cert_mod = 0;
                ok = false;
            }
        } else if (ub[i] % d != 0) {
            out.cert_u = s.U[i];
            out.cert_mod = d;
            ok = false;
        } else if (i < n) {
            y[i] = ub[i] / d;
        }
    }
    if (ok) out.solution = mat_vec(s.V, y);

    for (size_t j = 0; j < n; ++j) {
        Int d = j < s.diag.size() ? s.diag[j] : Int(0);
        if (d != 0) continue;
        IntVec col(n);
        for (size_t i = 0; i < n; ++i) col[i] = s.V[i][j];
        out.nullspace.push_back(std::move(col));
    }
    return out;
}

std::optional<IntVec> solve_with(const SmithResult& s, const IntVec& b) {
    size_t m = s.U.size(), n = s.V.size();
    if (b.size() != m) throw error("dimension mismatch");
    IntVec ub = mat_vec(s.U, b);
    IntVec y(n, 0);
    for (size_t i = 0; i < m; ++i) {
        Int d = i < s.diag.size() ? s.diag[i] : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else if (ub[i] % d != 0) {
            return std::nullopt;
        } else {
            y[i] = ub[i] / d;
        }
    }
    return mat_vec(s.V, y);
}

IntMat integer_nullspace(const IntMat& A) {
    size_t m = rows(A);
    IntVec zero(m, 0);
    return solve_integer(A, zero).nullspace;
}

}  // namespace shl
