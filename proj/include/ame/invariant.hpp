#pragma once
// Permutation-indexed LU invariants.
//
// For permutations sigma,tau,rho,lambda of [n] and an operator A of order d^2,
//
//   A(sigma,tau,rho,lambda) = sum  prod_m A^{i_m j_m}_{k_m l_m}
//                                * prod_m conj( A^{i_sigma(m) j_tau(m)}_{k_rho(m) l_lambda(m)} )
//
// with independent sums over all i,j,k,l vectors.  The sparse path enumerates
// n-tuples of support entries lexicographically (deterministic chunked
// accumulation) and prunes via feasibility masks on the conjugated factors;
// the dense path loops over all index vectors and is guarded by a term
// budget (default 1e9).

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "ame/core.hpp"
#include "ame/latin.hpp"

namespace ame {

// Four permutations of [n], stored as 0-based image vectors.
struct PermTuple {
    int n = 0;
    std::vector<int> sigma, tau, rho, lambda;

    const std::vector<int>& row(int r) const {
        switch (r) {
            case 0: return sigma;
            case 1: return tau;
            case 2: return rho;
            default: return lambda;
        }
    }
};

inline bool is_permutation(const std::vector<int>& p, int n) {
    if ((int)p.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

inline void validate_tuple(const PermTuple& t) {
    for (int r = 0; r < 4; ++r)
        if (!is_permutation(t.row(r), t.n))
            throw std::invalid_argument("PermTuple: row is not a permutation of [n]");
}

// The n=4 tuple sigma=(1 2 3 4), tau=(2 1 4 3), rho=(3 4 1 2), lambda=(4 3 2 1).
inline PermTuple canonical_n4_tuple() {
    return {4, {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
}

inline PermTuple inverse_tuple(const PermTuple& t) {
    PermTuple r;
    r.n = t.n;
    r.sigma.resize(t.n);
    r.tau.resize(t.n);
    r.rho.resize(t.n);
    r.lambda.resize(t.n);
    for (int m = 0; m < t.n; ++m) {
        r.sigma[t.sigma[m]] = m;
        r.tau[t.tau[m]] = m;
        r.rho[t.rho[m]] = m;
        r.lambda[t.lambda[m]] = m;
    }
    return r;
}

// 4 x n image array must have 4 distinct symbols in every column.
inline bool latin_rectangle_check(const PermTuple& t) {
    validate_tuple(t);
    for (int m = 0; m < t.n; ++m) {
        std::set<int> col{t.sigma[m], t.tau[m], t.rho[m], t.lambda[m]};
        if ((int)col.size() != 4) return false;
    }
    return true;
}

namespace detail {

// Generic sparse contraction: recursive lexicographic enumeration of support
// n-tuples.  A conjugated factor is looked up as soon as all four of its
// source entries are chosen; a zero factor aborts the branch.
struct SparseContraction {
    int d, n;
    const PermTuple& t;
    std::vector<SparseEntry> supp;
    Mat dense;                           // value lookup
    // conj factor f needs entries (sigma[f], tau[f], rho[f], lambda[f]);
    // ready_at[f] = the deepest of those
    std::vector<int> ready_at;
    std::vector<std::vector<int>> ready_list;  // per depth, factors to fold in

    std::vector<const SparseEntry*> chosen;

    SparseContraction(const BipartiteOperator& a, const PermTuple& tup)
        : d(a.d), n(tup.n), t(tup), supp(a.nonzeros(1e-14)), dense(a.m) {
        ready_at.resize(n);
        ready_list.assign(n, {});
        for (int f = 0; f < n; ++f) {
            ready_at[f] = std::max({t.sigma[f], t.tau[f], t.rho[f], t.lambda[f]});
            ready_list[ready_at[f]].push_back(f);
        }
        chosen.resize(n);
    }

    cxd conj_factor(int f) const {
        const int i = chosen[t.sigma[f]]->i, j = chosen[t.tau[f]]->j;
        const int k = chosen[t.rho[f]]->k, l = chosen[t.lambda[f]]->l;
        return std::conj(dense(i * d + j, k * d + l));
    }

    cxd recurse(int depth, cxd acc) {
        if (depth == n) return acc;
        cxd sum = 0.0;
        for (const auto& e : supp) {
            chosen[depth] = &e;
            cxd term = acc * e.v;
            for (int f : ready_list[depth]) {
                term *= conj_factor(f);
                if (term == cxd(0.0)) break;
            }
            if (term != cxd(0.0)) sum += recurse(depth + 1, term);
        }
        return sum;
    }
};

// n=4 fast path.  Feasibility bitmasks over single local indices cut the
// depth-3 -> depth-4 expansion: for each conjugated factor, three of its four
// local indices are known after three picks, which restricts one component
// of the fourth pick to the support of a single matrix row/column.
inline cxd contract4(const BipartiteOperator& a, const PermTuple& t) {
    const int d = a.d, dd = d * d;
    const auto supp = a.nonzeros(1e-14);
    const Mat& M = a.m;

    // component masks: for row r and local k, which l complete a support cell
    // (and the three analogues)
    std::vector<uint64_t> l_of_rk(dd * d, 0), k_of_rl(dd * d, 0);
    std::vector<uint64_t> j_of_ic(d * dd, 0), i_of_jc(d * dd, 0);
    for (const auto& e : supp) {
        const int r = e.i * d + e.j, c = e.k * d + e.l;
        l_of_rk[r * d + e.k] |= 1ull << e.l;
        k_of_rl[r * d + e.l] |= 1ull << e.k;
        j_of_ic[e.i * dd + c] |= 1ull << e.j;
        i_of_jc[e.j * dd + c] |= 1ull << e.i;
    }

    // chosen-entry component providers for each conjugated factor
    const auto& sg = t.sigma;
    const auto& tu = t.tau;
    const auto& rh = t.rho;
    const auto& lb = t.lambda;

    cxd total = 0.0;
    std::array<const SparseEntry*, 4> e{};
    for (const auto& e0 : supp) {   // chunk index: deterministic accumulation
        cxd chunk = 0.0;
        e[0] = &e0;
        for (const auto& e1 : supp) {
            e[1] = &e1;
            for (const auto& e2 : supp) {
                e[2] = &e2;
                // For every conj factor, collect the constraint it imposes on
                // entry 3's components; factors not involving entry 3 are
                // evaluated directly.
                cxd pre = e0.v * e1.v * e2.v;
                uint64_t mi = ~0ull, mj = ~0ull, mk = ~0ull, ml = ~0ull;
                bool dead = false;
                for (int f = 0; f < 4 && !dead; ++f) {
                    const bool ni = sg[f] == 3, nj = tu[f] == 3, nk = rh[f] == 3, nl = lb[f] == 3;
                    const int cnt = ni + nj + nk + nl;
                    if (cnt == 0) {
                        const cxd cf = std::conj(M(e[sg[f]]->i * d + e[tu[f]]->j,
                                                   e[rh[f]]->k * d + e[lb[f]]->l));
                        if (cf == cxd(0.0)) dead = true;
                        pre *= cf;
                    } else if (cnt == 1) {
                        if (nl) {
                            const int r = e[sg[f]]->i * d + e[tu[f]]->j;
                            ml &= l_of_rk[r * d + e[rh[f]]->k];
                        } else if (nk) {
                            const int r = e[sg[f]]->i * d + e[tu[f]]->j;
                            mk &= k_of_rl[r * d + e[lb[f]]->l];
                        } else if (nj) {
                            const int c = e[rh[f]]->k * d + e[lb[f]]->l;
                            mj &= j_of_ic[e[sg[f]]->i * dd + c];
                        } else {
                            const int c = e[rh[f]]->k * d + e[lb[f]]->l;
                            mi &= i_of_jc[e[tu[f]]->j * dd + c];
                        }
                    }
                    // cnt >= 2: cannot restrict a single component; defer
                }
                if (dead || !mi || !mj || !mk || !ml) continue;
                for (const auto& e3 : supp) {
                    if (!(mi >> e3.i & 1) || !(mj >> e3.j & 1) ||
                        !(mk >> e3.k & 1) || !(ml >> e3.l & 1))
                        continue;
                    e[3] = &e3;
                    cxd term = pre * e3.v;
                    for (int f = 0; f < 4; ++f) {
                        if (sg[f] != 3 && tu[f] != 3 && rh[f] != 3 && lb[f] != 3) continue;
                        term *= std::conj(M(e[sg[f]]->i * d + e[tu[f]]->j,
                                            e[rh[f]]->k * d + e[lb[f]]->l));
                        if (term == cxd(0.0)) break;
                    }
                    chunk += term;
                }
            }
        }
        total += chunk;
    }
    return total;
}

}  // namespace detail

// Dense path: independent sums over all 4n local indices, cost d^{4n} terms.
inline cxd contract_invariant_dense(const BipartiteOperator& a, const PermTuple& t,
                                    double budget = 1e9) {
    const int d = a.d, n = t.n;
    const double terms = std::pow(double(d), 4.0 * n);
    if (terms > budget)
        throw std::length_error("contract_invariant: dense term count exceeds budget");
    std::vector<int> iv(n), jv(n), kv(n), lv(n);
    cxd total = 0.0;
    // odometer over the 4n indices
    const long long count = (long long)terms;
    for (long long x = 0; x < count; ++x) {
        long long y = x;
        for (int m = 0; m < n; ++m) { iv[m] = y % d; y /= d; }
        for (int m = 0; m < n; ++m) { jv[m] = y % d; y /= d; }
        for (int m = 0; m < n; ++m) { kv[m] = y % d; y /= d; }
        for (int m = 0; m < n; ++m) { lv[m] = y % d; y /= d; }
        cxd term = 1.0;
        for (int m = 0; m < n && term != cxd(0.0); ++m)
            term *= a.m(iv[m] * d + jv[m], kv[m] * d + lv[m]);
        for (int m = 0; m < n && term != cxd(0.0); ++m)
            term *= std::conj(a.m(iv[t.sigma[m]] * d + jv[t.tau[m]],
                                  kv[t.rho[m]] * d + lv[t.lambda[m]]));
        total += term;
    }
    return total;
}

inline cxd contract_invariant(const BipartiteOperator& a, const PermTuple& t) {
    validate_tuple(t);
    if (t.n == 4) return detail::contract4(a, t);
    detail::SparseContraction sc(a, t);
    return sc.recurse(0, 1.0);
}

// ---- ODLS multiset machinery ----

// Support quadruples (i,j,K_ij,L_ij) with multiplicities, and the component
// counting functions I,J,K,L.
struct MultiSubset {
    int d = 0;
    std::map<std::array<int, 4>, int> counts;  // 1-based quadruples

    std::vector<int> marginal(int component) const {
        std::vector<int> f(d, 0);
        for (const auto& [q, c] : counts) f[q[component] - 1] += c;
        return f;
    }
};

struct OdlsMultisets {
    MultiSubset X, Y;
    PermTuple perms;  // n = d: sigma = id, tau = reversal, rho, lambda by matching
};

inline OdlsMultisets multisets_from_odls(const OlsPair& pair) {
    if (!pair.diagonal_flag || !is_diagonal(pair.K) || !is_diagonal(pair.L))
        throw std::invalid_argument("multisets_from_odls: pair is not diagonal");
    const int d = pair.K.d;
    OdlsMultisets out;
    out.X.d = out.Y.d = d;
    for (int i = 0; i < d; ++i) {
        out.X.counts[{i + 1, i + 1, pair.K.at(i, i), pair.L.at(i, i)}]++;
        out.Y.counts[{i + 1, d - i, pair.K.at(i, d - 1 - i), pair.L.at(i, d - 1 - i)}]++;
    }
    // X enumerated by i: (i, i, K_ii, L_ii).  Y_m = (i_m, j_tau(m), k_rho(m), l_lambda(m)):
    // tau is the reversal, rho matches K's back diagonal into its main diagonal,
    // lambda likewise for L.
    out.perms.n = d;
    out.perms.sigma.resize(d);
    out.perms.tau.resize(d);
    out.perms.rho.resize(d);
    out.perms.lambda.resize(d);
    std::vector<int> kpos(d + 1), lpos(d + 1);  // symbol -> main-diagonal position
    for (int i = 0; i < d; ++i) {
        kpos[pair.K.at(i, i)] = i;
        lpos[pair.L.at(i, i)] = i;
    }
    for (int m = 0; m < d; ++m) {
        out.perms.sigma[m] = m;
        out.perms.tau[m] = d - 1 - m;
        out.perms.rho[m] = kpos[pair.K.at(m, d - 1 - m)];
        out.perms.lambda[m] = lpos[pair.L.at(m, d - 1 - m)];
    }
    return out;
}

// Invariant of the ODLS gate enphased with alpha at domain cell (1,1), using
// the n=d tuple extracted from the diagonals.
inline cxd odls_invariant(const BipartiteOperator& p_enphased, const OlsPair& pair) {
    auto ms = multisets_from_odls(pair);
    detail::SparseContraction sc(p_enphased, ms.perms);
    return sc.recurse(0, 1.0);
}

}  // namespace ame
