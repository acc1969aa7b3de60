#pragma once
// Exact integer linear algebra: fraction-free (Bareiss) elimination for rank
// over the rationals, and an integer-scaled kernel basis.
//
// Templated on the integer type; intermediates can grow, so instantiate with
// an arbitrary-precision integer for anything beyond toy sizes.

#include <stdexcept>
#include <vector>

namespace ame {

template <class Int>
using IntMatrix = std::vector<std::vector<Int>>;

template <class Int>
Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Fraction-free Gaussian elimination (Bareiss).  Returns the rank; `m` is
// consumed.  The division by the previous pivot is exact (Sylvester identity).
template <class Int>
int bareiss_rank(IntMatrix<Int> m) {
    if (m.empty()) return 0;
    const int rows = (int)m.size(), cols = (int)m[0].size();
    Int prev = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c)
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            m[r][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

// Integer reduced row-echelon form by cross-multiplication with per-row gcd
// normalization.  Rows end with each pivot column cleared everywhere else;
// returns the pivot column list and truncates `m` to its rank.
template <class Int>
std::vector<int> integer_rref(IntMatrix<Int>& m) {
    const int rows = (int)m.size(), cols = m.empty() ? 0 : (int)m[0].size();
    std::vector<int> pivots;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Int a = m[rank][col], b = m[r][col];
            for (int c = 0; c < cols; ++c) m[r][c] = a * m[r][c] - b * m[rank][c];
            Int g = 0;
            for (int c = 0; c < cols; ++c) g = int_gcd(g, m[r][c]);
            if (g > 1)
                for (int c = 0; c < cols; ++c) m[r][c] /= g;
        }
        pivots.push_back(col);
        ++rank;
    }
    m.resize(rank);
    return pivots;
}

// Basis of the right kernel: one integer vector per free column, entries
// scaled to gcd 1.
template <class Int>
std::vector<std::vector<Int>> integer_kernel_basis(IntMatrix<Int> m) {
    if (m.empty()) return {};
    const int cols = (int)m[0].size();
    const auto pivots = integer_rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Int lcm = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
        Int p = m[r][pivots[r]];
        if (p < 0) p = -p;
        lcm = lcm / int_gcd(lcm, p) * p;
    }
    std::vector<std::vector<Int>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Int> v(cols, 0);
        v[free] = lcm;
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free] * (lcm / m[r][pivots[r]]);
        Int g = 0;
        for (const Int& x : v) g = int_gcd(g, x);
        if (g > 1)
            for (Int& x : v) x /= g;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ame
