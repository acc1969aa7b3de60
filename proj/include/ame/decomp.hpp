#pragma once
// Polar and Schmidt decompositions: Frobenius-nearest unitary and nearest
// product (rank-1) approximation of a bipartite vector.

#include <stdexcept>

#include "ame/core.hpp"

namespace ame {

// Nearest unitary in Frobenius norm: the polar factor W V^dagger of
// M = W Sigma V^dagger.  Unique iff M has full rank.
inline Mat nearest_unitary(const Mat& m, double rank_tol = 1e-12) {
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().minCoeff() <= rank_tol * svd.singularValues().maxCoeff())
        throw std::domain_error("nearest_unitary: rank-deficient input, polar factor not unique");
    return svd.matrixU() * svd.matrixV().adjoint();
}

struct ProductApprox {
    Vec a, b;        // unit vectors in C^d
    double overlap;  // largest Schmidt coefficient of v/||v||
    bool degenerate; // top Schmidt value within 1e-10 of the next one
};

// Best product approximation a (x) b of a bipartite vector v in C^{d^2}:
// the top singular triple of the d x d coefficient matrix V[i][j] = v(d*i+j).
inline ProductApprox nearest_product(const Vec& v, int d) {
    if (v.norm() == 0.0)
        throw std::invalid_argument("nearest_product: zero vector");
    Mat c(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            c(i, j) = v(i * d + j);
    Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    ProductApprox pa;
    pa.a = svd.matrixU().col(0);
    pa.b = svd.matrixV().col(0).conjugate();
    pa.overlap = svd.singularValues()(0) / v.norm();
    pa.degenerate =
        d > 1 && svd.singularValues()(0) - svd.singularValues()(1) < 1e-10 * v.norm();
    return pa;
}

inline Vec kron_vec(const Vec& a, const Vec& b) {
    Vec v(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            v(i * b.size() + j) = a(i) * b(j);
    return v;
}

}  // namespace ame
