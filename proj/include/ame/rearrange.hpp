#pragma once
// Matrix rearrangements: realignment R and partial transpose Gamma.
//
//   <ij|U^R|ab>     = <ia|U|jb>      (realignment)
//   <ib|U^Gamma|ja> = <ia|U|jb>      (partial / blockwise transpose)
//
// Both are involutions and permute matrix entries, so Frobenius norms are
// preserved.  Templated on the Eigen matrix type so the same code serves
// complex operators and integer/boolean support masks.

#include "ame/core.hpp"

namespace ame {

template <class Matrix>
Matrix realign_matrix(const Matrix& u, int d) {
    Matrix r(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    r(i * d + j, a * d + b) = u(i * d + a, j * d + b);
    return r;
}

template <class Matrix>
Matrix partial_transpose_matrix(const Matrix& u, int d) {
    Matrix g(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int b = 0; b < d; ++b)
            for (int j = 0; j < d; ++j)
                for (int a = 0; a < d; ++a)
                    g(i * d + b, j * d + a) = u(i * d + a, j * d + b);
    return g;
}

inline BipartiteOperator realign(const BipartiteOperator& u) {
    return {u.d, realign_matrix(u.m, u.d)};
}

inline BipartiteOperator partial_transpose(const BipartiteOperator& u) {
    return {u.d, partial_transpose_matrix(u.m, u.d)};
}

}  // namespace ame
