#pragma once

#include <cstdint>
#include <vector>

#include "edikit/types.hpp"

namespace edikit {

/// Normal equations of the per-pixel multi-frame stack: a symmetric
/// positive-definite tridiagonal matrix with main diagonal [2, 3, ..., 3, 2]
/// (degenerating to [1] for n = 1) and -1 off-diagonals, plus the right-hand
/// side. Only n and the rhs are stored; the matrix pattern is structural.
struct TridiagonalSystem {
    int n = 0;
    std::vector<double> rhs;

    double diag(int i) const {
        if (n == 1) return 1.0;
        return (i == 0 || i == n - 1) ? 2.0 : 3.0;
    }
};

/// Largest n whose solve stays within exact 64-bit Fibonacci arithmetic
/// (the determinant F_{2n} caps the table). Larger systems fall back to
/// solve_oracle.
inline constexpr int kFibonacciSolveMaxN = 40;

struct SolveStats {
    long long fibonacci_solves = 0;
    long long oracle_fallbacks = 0;
};

/// Standard Fibonacci numbers F_1 = F_2 = 1, F_3 = 2, ... as exact integers;
/// index must stay <= 92 (the int64 bound).
std::int64_t fibonacci_number(int index);

/// Determinant of the n x n system matrix via the integer continuant
/// recurrence D_k = diag_k * D_{k-1} - D_{k-2}; equals F_{2n}.
std::int64_t normal_matrix_determinant(int n);

/// Direct solve exploiting the fixed matrix structure: the LU factors carry
/// Fibonacci-number entries, giving x_n = sum_i r_i F_{2i-1} / F_{2n} and,
/// in general, inverse entries F_{2*min(i,j)-1} * F_{2*(n-max(i,j))+1} / F_{2n}.
/// Evaluated through prefix/suffix sums, which reproduces the back-substitution
/// solution without its backward error growth. Systems with n beyond the
/// integer-safe bound fall back to solve_oracle (flagged in stats).
std::vector<double> solve_fibonacci_lu(const TridiagonalSystem& system,
                                       SolveStats* stats = nullptr);

/// Generic symmetric tridiagonal elimination (no pivoting; the matrix is SPD).
/// Verification oracle and overflow fallback.
std::vector<double> solve_oracle(const TridiagonalSystem& system);

}  // namespace edikit
