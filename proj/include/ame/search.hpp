#pragma once
// Seeded numerical search for 2-unitary matrices by alternating nearest-
// unitary projections in the three rearrangement frames:
//
//   U <- polar(U);  U <- R^-1(polar(R(U)));  U <- G^-1(polar(G(U)))
//
// Each step is the Frobenius-nearest unitary in its own frame, so the deficit
// that step targets never increases; the map can still stall on fixed points
// that are not 2-unitary (guaranteed for d = 2, where no 2-unitary exists).

#include <cstdint>
#include <random>
#include <vector>

#include "ame/core.hpp"
#include "ame/decomp.hpp"
#include "ame/rearrange.hpp"
#include "ame/unitarity.hpp"

namespace ame {

// Haar-distributed unitary: QR of a complex Gaussian matrix with the diagonal
// of R phase-fixed to the positive real axis.  Deterministic per seed.
inline Mat random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = cxd(g(rng), g(rng));
    Eigen::HouseholderQR<Mat> qr(z);
    Mat q = qr.householderQ();
    for (int j = 0; j < n; ++j) {
        cxd r = qr.matrixQR()(j, j);
        double m = std::abs(r);
        if (m > 0) q.col(j) *= r / m;
    }
    return q;
}

struct DeficitTriple {
    double u, r, g;
    double max() const { return std::max(u, std::max(r, g)); }
};

struct SearchResult {
    BipartiteOperator U;
    std::vector<DeficitTriple> deficits;  // one triple per iteration
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    int restarts = 0;
};

struct SearchOptions {
    int max_iter = 2000;
    double tol = 1e-12;
    int stall_window = 200;        // iterations without relative improvement ...
    double stall_improvement = 1e-3;  // ... of at least this factor trigger a restart
};

// Alternating-projection search from a seeded Haar start.  Non-convergence is
// a valid outcome (converged = false); the deficit history is recorded either
// way.  Restarts draw fresh Haar matrices from the same generator stream, so
// the whole run is deterministic per seed.
inline SearchResult search_two_unitary(int d, std::uint64_t seed,
                                       const SearchOptions& opt = {}) {
    const int n = d * d;
    SearchResult res;
    res.seed = seed;
    std::mt19937_64 seeder(seed);
    Mat u = random_unitary(n, seeder());
    double stall_ref = 1e300;
    int stall_count = 0;
    for (int it = 0; it < opt.max_iter; ++it) {
        u = nearest_unitary(u);
        u = realign_matrix(nearest_unitary(realign_matrix(u, d)), d);
        u = partial_transpose_matrix(nearest_unitary(partial_transpose_matrix(u, d)), d);
        DeficitTriple t{unitarity_deficit(u), unitarity_deficit(realign_matrix(u, d)),
                        unitarity_deficit(partial_transpose_matrix(u, d))};
        res.deficits.push_back(t);
        res.iterations = it + 1;
        if (t.max() < opt.tol) {
            res.converged = true;
            break;
        }
        if (t.max() < stall_ref * (1.0 - opt.stall_improvement)) {
            stall_ref = t.max();
            stall_count = 0;
        } else if (++stall_count >= opt.stall_window) {
            u = random_unitary(n, seeder());
            res.restarts++;
            stall_ref = 1e300;
            stall_count = 0;
        }
    }
    res.U = BipartiteOperator(d, u);
    return res;
}

inline SearchResult search_two_unitary(int d, std::uint64_t seed, int max_iter, double tol) {
    SearchOptions opt;
    opt.max_iter = max_iter;
    opt.tol = tol;
    return search_two_unitary(d, seed, opt);
}

}  // namespace ame
