#pragma once
// Vectorization of bipartite unitaries into four-party states and
// bipartition marginal spectra.
//
//   |Psi_U> = (1/d) sum U^{ia}_{jb} |i a j b>,   parties (A,B,C,D) <-> (i,a,j,b)
//
// For U unitary the AB|CD marginal is automatically maximally mixed; the
// AC|BD and AD|BC marginals are maximally mixed iff U is dual / T-dual.

#include <algorithm>

#include "ame/core.hpp"

namespace ame {

enum class Bipartition { AB_CD, AC_BD, AD_BC };

inline StateVector vectorize(const BipartiteOperator& u) {
    StateVector psi(u.d);
    const int d = u.d;
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
            for (int j = 0; j < d; ++j)
                for (int b = 0; b < d; ++b)
                    psi.at(i, a, j, b) = u.at(i, a, j, b) / double(d);
    return psi;
}

// Eigenvalues of the reduced density matrix of the first party pair,
// descending.  The coefficient matrix M groups the amplitudes so that the
// bipartition's first pair indexes rows; the spectrum of M M^dagger is the
// marginal spectrum.
inline std::vector<double> marginal_spectrum(const StateVector& psi, Bipartition bp) {
    const int d = psi.d;
    Mat m(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
            for (int j = 0; j < d; ++j)
                for (int b = 0; b < d; ++b) {
                    const cxd v = psi.at(i, a, j, b);
                    switch (bp) {
                        case Bipartition::AB_CD: m(i * d + a, j * d + b) = v; break;
                        case Bipartition::AC_BD: m(i * d + j, a * d + b) = v; break;
                        case Bipartition::AD_BC: m(i * d + b, a * d + j) = v; break;
                    }
                }
    Eigen::SelfAdjointEigenSolver<Mat> es(m * m.adjoint());
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + d * d);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

}  // namespace ame
