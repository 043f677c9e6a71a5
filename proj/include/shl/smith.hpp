// Exact integer linear algebra: Smith normal form with unimodular
// transforms, integer linear solving with infeasibility certificates,
// and nullspace bases.
#ifndef SHL_SMITH_HPP
#define SHL_SMITH_HPP

#include <optional>
#include <vector>

#include "shl/algebra.hpp"

namespace shl {

using IntMat = std::vector<std::vector<Int>>;
using IntVec = std::vector<Int>;

/// U * A * V = D, with U (m x m) and V (n x n) unimodular and D diagonal
/// with nonnegative entries d_1 | d_2 | ... .
struct SmithResult {
    IntMat U, V;
    IntVec diag;  // min(m, n) entries
};

SmithResult smith_normal_form(const IntMat& A);

/// Outcome of solving A x = b over the integers. When unsolvable, the
/// certificate (u, m) satisfies u A = 0 (mod m) componentwise but
/// u . b != 0 (mod m); m = 0 means exactly over the integers.
struct IntSolveResult {
    std::optional<IntVec> solution;
    IntVec cert_u;
    Int cert_mod = 0;
    IntMat nullspace;  // basis of the kernel lattice of A
};

IntSolveResult solve_integer(const IntMat& A, const IntVec& b);

/// Solve with a precomputed factorization (no certificate bookkeeping).
std::optional<IntVec> solve_with(const SmithResult& s, const IntVec& b);

IntMat integer_nullspace(const IntMat& A);

IntVec mat_vec(const IntMat& A, const IntVec& x);

}  // namespace shl

#endif
