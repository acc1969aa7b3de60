#pragma once
// Constructive reduction of a two-qutrit 2-unitary to the canonical
// permutation P9 by one-sided local unitaries:
//
//   (left1 (x) left2) . U . (right1 (x) right2) = P9.
//
// The pipeline anchors a product-fixed pair at |11>, diagonalises the 2x2
// blocks P and Q by a joint SVD, absorbs the resulting sigma and C unitaries,
// and finally strips residual unimodular phases.  Every stage asserts the
// zero pattern the algebra forces at that point; a violated pattern signals
// a non-2-unitary input or numerical degeneracy.

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ame/core.hpp"
#include "ame/decomp.hpp"
#include "ame/latin.hpp"
#include "ame/unitarity.hpp"

namespace ame {

// The 2-unitary permutation on two qutrits taking the product basis
// (11,12,13,21,22,23,31,32,33) to (11,23,32,33,12,21,22,31,13).
inline PermutationGate p9() {
    PermutationGate g;
    g.d = 3;
    g.map = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 0}};
    return g;
}

// 9x9 boolean mask naming which entries may be nonzero at a pipeline stage.
struct ZeroPattern {
    std::array<std::array<bool, 9>, 9> allowed{};

    // rows of '0'/'1' characters, '1' = entry may be nonzero
    static ZeroPattern from_rows(const std::array<const char*, 9>& rows) {
        ZeroPattern p;
        for (int r = 0; r < 9; ++r)
            for (int c = 0; c < 9; ++c)
                p.allowed[r][c] = rows[r][c] == '1';
        return p;
    }

    int allowed_count() const {
        int n = 0;
        for (const auto& row : allowed)
            for (bool a : row) n += a;
        return n;
    }

    // Frobenius mass sitting on forbidden entries.
    double deficit(const Mat& m) const {
        double s = 0.0;
        for (int r = 0; r < 9; ++r)
            for (int c = 0; c < 9; ++c)
                if (!allowed[r][c]) s += std::norm(m(r, c));
        return std::sqrt(s);
    }
};

namespace patterns {

// Anchored operator under the dual-unitarity constraint alone: the nine 3x3
// blocks are mutually orthonormal, which clears the first block and the
// first row and column of every other block.
inline ZeroPattern anchored_dual() {
    return ZeroPattern::from_rows({"100000000",
                                   "000111111",
                                   "000111111",
                                   "011011011",
                                   "011111111",
                                   "011111111",
                                   "011011011",
                                   "011111111",
                                   "011111111"});
}

// Anchored operator under the T-dual constraint alone.
inline ZeroPattern anchored_tdual() {
    return ZeroPattern::from_rows({"100000000",
                                   "000011011",
                                   "000011011",
                                   "000011011",
                                   "011111111",
                                   "011111111",
                                   "000011011",
                                   "011111111",
                                   "011111111"});
}

// Anchored 2-unitary: both constraints combined leave 33 admissible entries.
inline ZeroPattern anchored_two_unitary() {
    return ZeroPattern::from_rows({"100000000",
                                   "000011011",
                                   "000011011",
                                   "000011011",
                                   "011100100",
                                   "011100100",
                                   "000011011",
                                   "011100100",
                                   "011100100"});
}

// After the joint block SVD: P and Q diagonalised, 25 admissible entries.
inline ZeroPattern after_block_svd() {
    return ZeroPattern::from_rows({"100000000",
                                   "000010010",
                                   "000001001",
                                   "000011011",
                                   "001100100",
                                   "010100100",
                                   "000011011",
                                   "001100100",
                                   "010100100"});
}

// After absorbing the sigma matrix: every column is a product vector and
// only 15 entries survive.
inline ZeroPattern after_sigma() {
    return ZeroPattern::from_rows({"100000000",
                                   "000010000",
                                   "000000001",
                                   "000001010",
                                   "001000100",
                                   "010100000",
                                   "000001010",
                                   "001000100",
                                   "010100000"});
}

// After absorbing C: an enphased P9, one unimodular entry per row and column.
inline ZeroPattern after_c() {
    return ZeroPattern::from_rows({"100000000",
                                   "000010000",
                                   "000000001",
                                   "000001000",
                                   "000000100",
                                   "010000000",
                                   "000000010",
                                   "001000000",
                                   "000100000"});
}

}  // namespace patterns

// A product-fixed pair: U (x (x) y) = x' (x) y' within tolerance.
struct ProductPair {
    Vec x, y, xp, yp;
    double forward_overlap = 0.0;   // largest Schmidt coefficient of U(x(x)y)
    double backward_overlap = 0.0;  // same for U^dagger(x'(x)y')
    int restarts = 0;
    int iterations = 0;
};

struct NoProductPairError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPatternError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Vec random_unit_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(g(rng), g(rng));
    return v / v.norm();
}

}  // namespace detail

// Alternating projection search for a product state whose image under U is
// again a product state.  From a random product input, the forward image is
// replaced by its nearest product, pulled back through U^dagger, and again
// projected; the pair is accepted once both Schmidt overlaps exceed 1 - tol.
// Guaranteed to exist for two-qutrit 2-unitaries (no universal entanglers in
// d = 3); best-effort for other inputs.
inline ProductPair find_fixed_product_pair(const BipartiteOperator& u, std::uint64_t seed = 0,
                                           double tol = 1e-12, int max_restarts = 50,
                                           int iters_per_restart = 200) {
    const int d = u.d;
    std::mt19937_64 rng(seed);
    ProductPair best;
    double best_score = -1.0;
    for (int restart = 0; restart < max_restarts; ++restart) {
        Vec x = detail::random_unit_vector(d, rng);
        Vec y = detail::random_unit_vector(d, rng);
        for (int it = 0; it < iters_per_restart; ++it) {
            Vec fwd = u.m * kron_vec(x, y);
            ProductApprox pf = nearest_product(fwd, d);
            Vec bwd = u.m.adjoint() * kron_vec(pf.a, pf.b);
            ProductApprox pb = nearest_product(bwd, d);
            x = pb.a;
            y = pb.b;
            double score = std::min(pf.overlap, pb.overlap);
            if (score > best_score) {
                best = {x, y, pf.a, pf.b, pf.overlap, pb.overlap, restart, it + 1};
                best_score = score;
            }
            if (score > 1.0 - tol) {
                // Polish: the overlap criterion stops at O(sqrt(eps)) vector
                // error, but the iteration contracts geometrically, so a few
                // more passes reach machine-level product pairs.
                double prev = 2.0;
                for (int p = 0; p < 100; ++p) {
                    Vec w = u.m * kron_vec(x, y);
                    ProductApprox qf = nearest_product(w, d);
                    double dist = (w - kron_vec(qf.a, qf.b)).norm();
                    if (dist < 1e-14 || dist >= prev) break;
                    prev = dist;
                    ProductApprox qb = nearest_product(u.m.adjoint() * kron_vec(qf.a, qf.b), d);
                    x = qb.a;
                    y = qb.b;
                }
                ProductApprox pf2 = nearest_product(u.m * kron_vec(x, y), d);
                ProductApprox pb2 = nearest_product(u.m.adjoint() * kron_vec(pf2.a, pf2.b), d);
                return {x, y, pf2.a, pf2.b, pf2.overlap, pb2.overlap, restart, it + 1};
            }
        }
    }
    throw NoProductPairError(
        "find_fixed_product_pair: no product-fixed pair after " + std::to_string(max_restarts) +
        " restarts (best overlap " + std::to_string(best_score) + ")");
}

namespace detail {

// Unitary completion of a unit vector as the first column.
inline Mat unitary_with_first_column(const Vec& x) {
    const int d = (int)x.size();
    Mat m = Mat::Identity(d, d);
    m.col(0) = x;
    Eigen::HouseholderQR<Mat> qr(m);
    Mat q = qr.householderQ();
    // Q e0 = x / r00 with |r00| = 1; rotate the column so it equals x exactly.
    cxd r00 = qr.matrixQR()(0, 0);
    q.col(0) *= r00;
    return q;
}

struct AnchorResult {
    Mat u1;              // anchored 9x9 operator, <11|U1|11> = 1
    Mat a1, b1, a2, b2;  // completions of x, y, x', y'
    cxd phase;           // global phase divided out of (a2 (x) b2)^dagger U (a1 (x) b1)
};

inline AnchorResult anchor_full(const BipartiteOperator& u, const ProductPair& pair,
                                double tol = 1e-8) {
    if ((u.m * kron_vec(pair.x, pair.y) - kron_vec(pair.xp, pair.yp)).norm() > tol * 10)
        throw std::invalid_argument("anchor: pair is not product-fixed within tolerance");
    AnchorResult r;
    r.a1 = unitary_with_first_column(pair.x);
    r.b1 = unitary_with_first_column(pair.y);
    r.a2 = unitary_with_first_column(pair.xp);
    r.b2 = unitary_with_first_column(pair.yp);
    Mat u1 = kron(r.a2, r.b2).adjoint() * u.m * kron(r.a1, r.b1);
    cxd e = u1(0, 0);
    r.phase = e / std::abs(e);
    r.u1 = u1 / r.phase;
    return r;
}

}  // namespace detail

// Anchor a product-fixed pair at |11>: returns U1 = (a2 (x) b2)^dagger U (a1 (x) b1)
// with the global phase rotated so that <11|U1|11> = +1.
inline BipartiteOperator anchor(const BipartiteOperator& u, const ProductPair& pair) {
    return BipartiteOperator(u.d, detail::anchor_full(u, pair).u1);
}

struct StageRecord {
    std::string stage;
    double deficit = 0.0;  // mass on entries the stage requires to vanish
};

// Explicit local-unitary factorisation U = (left1 (x) left2)^dagger P9 (right1 (x) right2)^dagger,
// stored so that (left1 (x) left2) U (right1 (x) right2) = P9 within `residual`.
struct LuFactorization {
    Mat left1, left2, right1, right2;
    double residual = 0.0;
    std::vector<StageRecord> stage_log;
};

namespace detail {

// 3x3 block-diagonal embedding diag(1, M) of a 2x2 matrix.
inline Mat embed2(const Eigen::Matrix2cd& m) {
    Mat e = Mat::Identity(3, 3);
    e.block<2, 2>(1, 1) = m;
    return e;
}

inline Mat p9_matrix() { return p9().to_operator().m; }

inline void check_stage(std::vector<StageRecord>& log, const std::string& name, double deficit,
                        double tol) {
    log.push_back({name, deficit});
    if (deficit > tol)
        throw ZeroPatternError("reduce_to_p9: zero-pattern violation at stage '" + name +
                               "' (deficit " + std::to_string(deficit) + ")");
}

}  // namespace detail

struct ReduceOptions {
    double stage_tol = 1e-9;      // zero-pattern tolerance per stage
    double pair_tol = 1e-12;      // product-pair overlap tolerance (1 - tol)
    int max_restarts = 50;
    int iters_per_restart = 200;
    double degeneracy_tol = 1e-6; // |sigma1 - sigma2| below which the joint SVD
                                  // falls back to diagonalising Q P^dagger
};

// Full pipeline: product pair -> anchor -> block SVD -> sigma -> C -> phases.
inline LuFactorization reduce_to_p9(const BipartiteOperator& u, std::uint64_t seed = 0,
                                    const ReduceOptions& opt = {}) {
    using detail::embed2;
    if (u.d != 3) throw std::invalid_argument("reduce_to_p9: requires local dimension 3");

    LuFactorization f;

    // Stage 1: anchor a product-fixed pair at |11>.
    ProductPair pair = find_fixed_product_pair(u, seed, opt.pair_tol, opt.max_restarts,
                                               opt.iters_per_restart);
    detail::AnchorResult an = detail::anchor_full(u, pair);
    detail::check_stage(f.stage_log, "anchor", patterns::anchored_two_unitary().deficit(an.u1),
                        opt.stage_tol);

    // Stage 2: joint SVD of the 2x2 blocks P (rows {2,3} x cols {5,6}) and
    // Q (rows {2,3} x cols {8,9}).
    Eigen::Matrix2cd P = an.u1.block<2, 2>(1, 4);
    Eigen::Matrix2cd Q = an.u1.block<2, 2>(1, 7);
    const Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity();
    double block_dev = std::max({(P * P.adjoint() + Q * Q.adjoint() - I2).norm(),
                                 (P.adjoint() * P + Q.adjoint() * Q - I2).norm(),
                                 std::abs((P.adjoint() * P).trace() - 1.0),
                                 std::abs((Q.adjoint() * Q).trace() - 1.0),
                                 std::abs((P.adjoint() * Q).trace())});
    detail::check_stage(f.stage_log, "block-relations", block_dev, 1e-9);

    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(P, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix2cd V1 = svd.matrixU();
    Eigen::Matrix2cd W1 = svd.matrixV();
    double s1 = svd.singularValues()(0), s2 = svd.singularValues()(1);
    if (s1 - s2 < opt.degeneracy_tol) {
        // Equal singular values leave the SVD bases free; pick the pair that
        // also diagonalises Q by eigendecomposing the normal matrix Q P^dagger.
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(Q * P.adjoint());
        Eigen::Matrix2cd T = es.eigenvectors();
        T.col(0).normalize();
        T.col(1) = (T.col(1) - T.col(0) * (T.col(0).adjoint() * T.col(1))(0, 0)).normalized();
        V1 = T;
        for (int k = 0; k < 2; ++k) {
            Eigen::Vector2cd w = P.adjoint() * V1.col(k);
            W1.col(k) = w.normalized();
        }
    }
    // V1^dagger Q W1 is forced diagonal by the joint structure; its
    // off-diagonals land on forbidden positions of the stage pattern below.
    Mat u2 = kron(Mat::Identity(3, 3), embed2(V1).adjoint()) * an.u1 *
             kron(Mat::Identity(3, 3), embed2(W1));
    detail::check_stage(f.stage_log, "block-svd", patterns::after_block_svd().deficit(u2),
                        opt.stage_tol);

    // Stage 3: the 2x2 matrix [[sigma1, sigma1'], [sigma2, sigma2']] is
    // unitary; absorb its inverse on the right (first factor).
    Eigen::Matrix2cd sig;
    sig << u2(1, 4), u2(1, 7), u2(2, 5), u2(2, 8);
    detail::check_stage(f.stage_log, "sigma-unitary",
                        (sig.adjoint() * sig - I2).norm(), 1e-9);
    Mat u3 = u2 * kron(embed2(sig.adjoint()), Mat::Identity(3, 3));
    detail::check_stage(f.stage_log, "sigma", patterns::after_sigma().deficit(u3), opt.stage_tol);

    // Stage 4: the four labelled entries form a unitary C; absorb C^dagger on
    // the left (first factor).
    Eigen::Matrix2cd C;
    C << u3(3, 5), u3(3, 7), u3(6, 5), u3(6, 7);
    detail::check_stage(f.stage_log, "c-unitary", (C.adjoint() * C - I2).norm(), 1e-9);
    Mat u4 = kron(embed2(C.adjoint()), Mat::Identity(3, 3)) * u3;
    detail::check_stage(f.stage_log, "c", patterns::after_c().deficit(u4), opt.stage_tol);

    // Stage 5: strip the four residual unimodular phases.  The diagonal
    // phase gates below are the unique solution of the support equations;
    // computing each exponent as a coherent sum of arguments divided by 3
    // (one cube-root branch per gate entry) cancels every phase exactly.
    const double a1 = std::arg(u4(5, 1)), a2 = std::arg(u4(4, 6));
    const double a3 = std::arg(u4(7, 2)), a4 = std::arg(u4(8, 3));
    auto ph = [](double t) { return std::polar(1.0, t); };
    Mat F1 = Mat::Identity(3, 3), F2 = Mat::Identity(3, 3);
    Mat F3 = Mat::Identity(3, 3), F4 = Mat::Identity(3, 3);
    F1(1, 1) = ph(-(a1 + a2) / 3);      F1(2, 2) = ph(-(a3 + a4) / 3);
    F2(1, 1) = ph(-(a2 + a3) / 3);      F2(2, 2) = ph(-(a1 + a4) / 3);
    F3(1, 1) = ph((a1 + a3 - a4) / 3);  F3(2, 2) = ph((a1 + a3 - a2) / 3);
    F4(1, 1) = ph((a2 + a4 - a1) / 3);  F4(2, 2) = ph((a2 + a4 - a3) / 3);

    // Accumulate the pure-tensor factors of every stage.
    f.left1 = F1 * embed2(C.adjoint()) * an.a2.adjoint() / an.phase;
    f.left2 = F2 * embed2(V1.adjoint()) * an.b2.adjoint();
    f.right1 = an.a1 * embed2(sig.adjoint()) * F3;
    f.right2 = an.b1 * embed2(W1) * F4;
    f.residual =
        (kron(f.left1, f.left2) * u.m * kron(f.right1, f.right2) - detail::p9_matrix()).norm();
    f.stage_log.push_back({"phases", f.residual});
    return f;
}

// Recompute (left1 (x) left2) U (right1 (x) right2) and compare to P9; all
// four factors must themselves be unitary at the same tolerance.
inline bool verify_factorization(const BipartiteOperator& u, const LuFactorization& f,
                                 double tol = 1e-8) {
    for (const Mat* m : {&f.left1, &f.left2, &f.right1, &f.right2})
        if (unitarity_deficit(*m) > tol) return false;
    Mat t = kron(f.left1, f.left2) * u.m * kron(f.right1, f.right2);
    return (t - detail::p9_matrix()).norm() <= tol;
}

}  // namespace ame
