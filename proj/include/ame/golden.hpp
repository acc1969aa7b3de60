#pragma once
// The order-36 golden 2-unitary U36, its one-parameter theta family, and the
// homogeneous phase-difference system whose kernel is the 25-parameter family
// of 2-unitary enphasings.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ame/core.hpp"
#include "ame/exactlinalg.hpp"
#include "ame/rearrange.hpp"
#include "ame/u36_data.hpp"
#include "ame/unitarity.hpp"

namespace ame {

struct GoldenConstants {
    double a = 0.0, b = 0.0, c = 0.0;
    cxd omega;

    static GoldenConstants values() {
        GoldenConstants g;
        g.a = 1.0 / std::sqrt(5.0 + std::sqrt(5.0));
        g.b = g.a * (1.0 + std::sqrt(5.0)) / 2.0;
        g.c = 1.0 / std::sqrt(2.0);
        g.omega = std::polar(1.0, 2.0 * pi / 20.0);
        return g;
    }
};

struct GoldenDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double magnitude_token(const std::string& tok) {
    GoldenConstants g = GoldenConstants::values();
    double v = 1.0;
    for (char ch : tok) {
        switch (ch) {
            case 'a': v *= g.a; break;
            case 'b': v *= g.b; break;
            case 'c': v *= g.c; break;
            default:
                throw GoldenDataError(std::string("unknown magnitude token '") + tok + "'");
        }
    }
    if (tok.empty()) throw GoldenDataError("empty magnitude token");
    return v;
}

}  // namespace detail

// Validation shared by the embedded table and external files.
inline void validate_u36(const BipartiteOperator& u, double deficit_threshold = 1e-10) {
    if (u.d != 6) throw GoldenDataError("u36: local dimension must be 6");
    size_t nz = u.nonzeros(1e-14).size();
    if (nz != 112)
        throw GoldenDataError("u36: expected 112 nonzeros, found " + std::to_string(nz));
    UnitarityReport rep = classify(u, deficit_threshold);
    if (!rep.is_two_unitary)
        throw GoldenDataError("u36: transcription checksum failed, max deficit " +
                              std::to_string(std::max({rep.deficit_u, rep.deficit_r,
                                                       rep.deficit_g})));
}

// Render the embedded structural table to a dense-backed operator.
inline BipartiteOperator load_u36() {
    GoldenConstants g = GoldenConstants::values();
    BipartiteOperator u(6);
    for (const auto& cell : u36data::cells) {
        int p = ((cell.pow % 20) + 20) % 20;
        u.m(cell.row, cell.col) =
            detail::magnitude_token(cell.mag) * std::pow(g.omega, p);
    }
    validate_u36(u);
    return u;
}

// Diagonal phase factors of the theta family: D on rows of U, D' on columns
// of the realignment, D'' on rows of the partial transpose.
inline Vec u36_dtheta(double theta) {
    Vec d = Vec::Ones(36);
    for (int r : {0, 3, 6, 9}) d(r) = std::polar(1.0, theta);
    return d;
}

inline Vec u36_dtheta_prime(double theta) {
    Vec d = Vec::Ones(36);
    for (int r : {0, 1, 18, 19}) d(r) = std::polar(1.0, theta);
    return d;
}

inline Vec u36_dtheta_second(double theta) {
    Vec d = Vec::Ones(36);
    for (int r : {0, 1, 6, 7}) d(r) = std::polar(1.0, theta);
    return d;
}

inline BipartiteOperator u36_theta(double theta) {
    BipartiteOperator u = load_u36();
    u.m = u36_dtheta(theta).asDiagonal() * u.m;
    return u;
}

// One homogeneous difference equation theta_p - theta_q - theta_r + theta_s = 0
// together with the frame and row pair that produced it.
struct PhaseEquation {
    std::array<int, 4> vars;   // p, q, r, s (indices into the support list)
    std::array<int, 4> coeff;  // +1, -1, -1, +1
    char frame;                // 'U', 'R', or 'G'
    int row1, row2;            // frame row pair
};

struct PhaseSystem {
    std::vector<SparseEntry> support;  // variable order, sorted by (i,j,k,l)
    std::vector<PhaseEquation> rows;

    int equations_for(char frame) const {
        int n = 0;
        for (const auto& r : rows) n += (r.frame == frame);
        return n;
    }
};

// For each frame and each unordered row pair sharing m >= 2 support columns,
// emit m-1 difference equations against the first shared column.  The
// rearrangements permute the unknowns, so every equation is written in the
// original entry variables.
inline PhaseSystem build_phase_system(const BipartiteOperator& u, double drop = 1e-14) {
    const int d = u.d, n = d * d;
    PhaseSystem sys;
    sys.support = u.nonzeros(drop);
    std::map<std::pair<int, int>, int> var;  // (row, col) of U -> variable id
    for (size_t v = 0; v < sys.support.size(); ++v) {
        const SparseEntry& e = sys.support[v];
        var[{e.i * d + e.j, e.k * d + e.l}] = (int)v;
    }

    // frame support: per frame row, the (frame col, variable) pairs
    for (char frame : {'U', 'R', 'G'}) {
        std::vector<std::vector<std::pair<int, int>>> rows(n);
        for (size_t v = 0; v < sys.support.size(); ++v) {
            const SparseEntry& e = sys.support[v];
            int r, c;
            if (frame == 'U') {
                r = e.i * d + e.j, c = e.k * d + e.l;
            } else if (frame == 'R') {
                r = e.i * d + e.k, c = e.j * d + e.l;
            } else {
                r = e.i * d + e.l, c = e.k * d + e.j;
            }
            rows[r].push_back({c, (int)v});
        }
        for (auto& row : rows) std::sort(row.begin(), row.end());
        for (int r1 = 0; r1 < n; ++r1)
            for (int r2 = r1 + 1; r2 < n; ++r2) {
                std::vector<std::array<int, 2>> shared;  // var in r1, var in r2
                size_t p = 0, q = 0;
                while (p < rows[r1].size() && q < rows[r2].size()) {
                    if (rows[r1][p].first == rows[r2][q].first) {
                        shared.push_back({rows[r1][p].second, rows[r2][q].second});
                        ++p, ++q;
                    } else if (rows[r1][p].first < rows[r2][q].first) {
                        ++p;
                    } else {
                        ++q;
                    }
                }
                for (size_t m = 1; m < shared.size(); ++m)
                    sys.rows.push_back({{shared[0][0], shared[0][1], shared[m][0], shared[m][1]},
                                        {+1, -1, -1, +1},
                                        frame,
                                        r1,
                                        r2});
            }
    }
    return sys;
}

namespace detail {

template <typename Int = long long>
IntMatrix<Int> system_matrix(const PhaseSystem& sys) {
    IntMatrix<Int> m(sys.rows.size(), std::vector<Int>(sys.support.size(), 0));
    for (size_t r = 0; r < sys.rows.size(); ++r)
        for (int k = 0; k < 4; ++k) m[r][sys.rows[r].vars[k]] += sys.rows[r].coeff[k];
    return m;
}

}  // namespace detail

// Rank over the rationals, via fraction-free elimination on the integer
// coefficient matrix.  No floating point is involved.
inline int exact_rank(const PhaseSystem& sys) {
    return bareiss_rank(detail::system_matrix<long long>(sys));
}

// Integer basis of the rational kernel, each vector scaled to gcd 1.
inline std::vector<std::vector<long long>> nullspace_basis(const PhaseSystem& sys) {
    const int nvars = (int)sys.support.size();
    if (sys.rows.empty()) {
        // No constraints (e.g. a permutation operator): every phase is free.
        std::vector<std::vector<long long>> basis(nvars, std::vector<long long>(nvars, 0));
        for (int i = 0; i < nvars; ++i) basis[i][i] = 1;
        return basis;
    }
    return integer_kernel_basis(detail::system_matrix<long long>(sys));
}

// Multiply each support entry by exp(i * sum_k coeffs[k] * basis[k]): every
// point of the kernel is a 2-unitary enphasing.
inline BipartiteOperator enphase_solution(const BipartiteOperator& u,
                                          const std::vector<double>& coeffs) {
    PhaseSystem sys = build_phase_system(u);
    auto basis = nullspace_basis(sys);
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("enphase_solution: expected " + std::to_string(basis.size()) +
                                    " coefficients, got " + std::to_string(coeffs.size()));
    BipartiteOperator out = u;
    const int d = u.d;
    for (size_t v = 0; v < sys.support.size(); ++v) {
        double theta = 0.0;
        for (size_t k = 0; k < basis.size(); ++k) theta += coeffs[k] * (double)basis[k][v];
        const SparseEntry& e = sys.support[v];
        out.at(e.i, e.j, e.k, e.l) *= std::polar(1.0, theta);
    }
    return out;
}

}  // namespace ame
