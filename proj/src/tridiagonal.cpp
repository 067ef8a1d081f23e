#include "edikit/tridiagonal.hpp"

#include <array>

namespace edikit {

namespace {

constexpr int kMaxFibIndex = 92;  // F_92 is the largest Fibonacci number in int64

const std::array<std::int64_t, kMaxFibIndex + 1>& fibonacci_table() {
    static const auto table = [] {
        std::array<std::int64_t, kMaxFibIndex + 1> t{};
        t[1] = 1;
        t[2] = 1;
        for (int k = 3; k <= kMaxFibIndex; ++k) t[k] = t[k - 1] + t[k - 2];
        return t;
    }();
    return table;
}

void check_system(const TridiagonalSystem& system) {
    if (system.n < 1) throw ValidationError("tridiagonal system needs n >= 1");
    if (static_cast<int>(system.rhs.size()) != system.n)
        throw ValidationError("tridiagonal rhs length does not match n");
}

}  // namespace

std::int64_t fibonacci_number(int index) {
    if (index < 1 || index > kMaxFibIndex)
        throw ValidationError("fibonacci_number: index out of the int64-safe range");
    return fibonacci_table()[index];
}

std::int64_t normal_matrix_determinant(int n) {
    if (n < 1) throw ValidationError("normal_matrix_determinant: n must be >= 1");
    if (n == 1) return 1;
    if (2 * n > kMaxFibIndex)
        throw ValidationError("normal_matrix_determinant: continuant exceeds int64");
    std::int64_t prev = 1;  // D_0
    std::int64_t cur = 2;   // D_1, first diagonal entry
    for (int k = 2; k <= n; ++k) {
        const std::int64_t d = (k == n) ? 2 : 3;
        const std::int64_t next = d * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> solve_fibonacci_lu(const TridiagonalSystem& system, SolveStats* stats) {
    check_system(system);
    const int n = system.n;
    if (n == 1) {
        if (stats) ++stats->fibonacci_solves;
        return {system.rhs[0]};
    }
    if (n > kFibonacciSolveMaxN) {
        if (stats) ++stats->oracle_fallbacks;
        return solve_oracle(system);
    }
    if (stats) ++stats->fibonacci_solves;

    const auto& fib = fibonacci_table();
    const double det = static_cast<double>(fib[2 * n]);
    const std::vector<double>& r = system.rhs;

    // prefix[k] = sum_{i<=k} r_i F_{2i-1}, suffix[k] = sum_{i>=k} r_i F_{2(n-i)+1}
    std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = n; i >= 1; --i)
        suffix[i - 1] = suffix[i] + r[i - 1] * static_cast<double>(fib[2 * (n - i) + 1]);

    std::vector<double> x(static_cast<std::size_t>(n));
    double prefix = 0.0;
    for (int k = 1; k <= n; ++k) {
        prefix += r[k - 1] * static_cast<double>(fib[2 * k - 1]);
        x[k - 1] = (static_cast<double>(fib[2 * (n - k) + 1]) * prefix +
                    static_cast<double>(fib[2 * k - 1]) * suffix[k]) /
                   det;
    }
    return x;
}

std::vector<double> solve_oracle(const TridiagonalSystem& system) {
    check_system(system);
    const int n = system.n;
    std::vector<double> x = system.rhs;
    if (n == 1) return x;

    // Thomas elimination with the fixed -1 off-diagonals.
    std::vector<double> upper(static_cast<std::size_t>(n), 0.0);
    double pivot = system.diag(0);
    upper[0] = -1.0 / pivot;
    x[0] /= pivot;
    for (int i = 1; i < n; ++i) {
        pivot = system.diag(i) + upper[i - 1];
        upper[i] = -1.0 / pivot;
        x[i] = (x[i] + x[i - 1]) / pivot;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= upper[i] * x[i + 1];
    return x;
}

}  // namespace edikit
