#pragma once
// Unitarity classification in the three rearrangement frames.
//
// A unitary U of order d^2 is dual unitary if U^R is unitary, T-dual if
// U^Gamma is unitary, and 2-unitary if all three hold.

#include "ame/core.hpp"
#include "ame/rearrange.hpp"

namespace ame {

struct UnitarityReport {
    double deficit_u = 0, deficit_r = 0, deficit_g = 0;
    bool is_unitary = false, is_dual = false, is_tdual = false, is_two_unitary = false;
    double tol = 0;
};

// Frobenius norm of M^dagger M - I.
inline double unitarity_deficit(const Mat& m) {
    const auto n = m.cols();
    return (m.adjoint() * m - Mat::Identity(n, n)).norm();
}

inline UnitarityReport classify(const BipartiteOperator& u, double tol = 1e-10) {
    UnitarityReport rep;
    rep.tol = tol;
    rep.deficit_u = unitarity_deficit(u.m);
    rep.deficit_r = unitarity_deficit(realign_matrix(u.m, u.d));
    rep.deficit_g = unitarity_deficit(partial_transpose_matrix(u.m, u.d));
    rep.is_unitary = rep.deficit_u < tol;
    rep.is_dual = rep.is_unitary && rep.deficit_r < tol;
    rep.is_tdual = rep.is_unitary && rep.deficit_g < tol;
    rep.is_two_unitary = rep.is_unitary && rep.is_dual && rep.is_tdual;
    return rep;
}

}  // namespace ame
