#pragma once
// The four-party operator L[U] and its trace moments.
//
//   L[U] = (S_BD (x) I_AC) (U^+ (x) U^+) (S_BD (x) I_AC) (U (x) U)
//
// acting on |a b c d> with U on (A,B) and (C,D); S_BD swaps parties B and D.
// Tr L[U] = Tr (U^R U^R+)^2 and equals d^2 exactly when U is dual unitary;
// higher moments Tr L^k[U] separate LU classes that the first moment cannot.

#include "ame/core.hpp"
#include "ame/rearrange.hpp"

namespace ame {

struct LOperator {
    int d = 0;
    Mat m;  // d^4 x d^4
};

namespace detail {

// permutation r -> index with parties B and D exchanged, |abcd> flat-nested
inline std::vector<int> swap_bd_perm(int d) {
    std::vector<int> p(d * d * d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    p[((a * d + b) * d + c) * d + e] = ((a * d + e) * d + c) * d + b;
    return p;
}

}  // namespace detail

inline LOperator build_L(const BipartiteOperator& u) {
    const int d = u.d, n4 = d * d * d * d;
    const auto s = detail::swap_bd_perm(d);
    Mat uu = kron(u.m, u.m);
    Mat uud = uu.adjoint();
    // S M has row r equal to row s(r) of M (S is the B<->D permutation, an
    // involution), so L = (S uud) * (S uu).
    Mat left(n4, n4), right(n4, n4);
    for (int r = 0; r < n4; ++r) {
        left.row(r) = uud.row(s[r]);
        right.row(r) = uu.row(s[r]);
    }
    return {d, left * right};
}

inline cxd moment(const BipartiteOperator& u, int k) {
    if (k < 1) throw std::invalid_argument("moment: k must be >= 1");
    const LOperator L = build_L(u);
    if (k == 1) return L.m.trace();
    if (k == 2) return (L.m.array() * L.m.transpose().array()).sum();
    Mat p = L.m;
    for (int t = 1; t < k - 1; ++t) p = p * L.m;
    return (p.array() * L.m.transpose().array()).sum();
}

}  // namespace ame
