#pragma once
// Basic types and index conventions for bipartite operators of order d^2.
//
// A bipartite operator acts on C^d (x) C^d.  Entries are addressed by four
// 1-based indices ((i,j),(k,l)): flat row = d*(i-1)+j, flat col = d*(k-1)+l.
// Internally everything is 0-based; the 1-based convention appears only at
// I/O boundaries.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ame {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

// flat <-> pair index maps (0-based)
inline int flat_idx(int a, int b, int d) { return a * d + b; }
inline std::pair<int, int> unflat_idx(int f, int d) { return {f / d, f % d}; }

inline Mat kron(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

// One nonzero of a sparse bipartite operator, 0-based indices.
struct SparseEntry {
    int i, j, k, l;
    cxd v;
};

// Dense-backed bipartite operator with local dimension d.
struct BipartiteOperator {
    int d = 0;
    Mat m;  // d^2 x d^2

    BipartiteOperator() = default;
    explicit BipartiteOperator(int d_) : d(d_), m(Mat::Zero(d_ * d_, d_ * d_)) {}
    BipartiteOperator(int d_, Mat mm) : d(d_), m(std::move(mm)) {
        if (m.rows() != d * d || m.cols() != d * d)
            throw std::invalid_argument("BipartiteOperator: matrix is not d^2 x d^2");
    }

    int n() const { return d * d; }

    cxd& at(int i, int j, int k, int l) { return m(flat_idx(i, j, d), flat_idx(k, l, d)); }
    cxd at(int i, int j, int k, int l) const { return m(flat_idx(i, j, d), flat_idx(k, l, d)); }

    // nonzeros, sorted by (i,j,k,l); entries below `drop` are treated as zero
    std::vector<SparseEntry> nonzeros(double drop = 0.0) const {
        std::vector<SparseEntry> out;
        for (int r = 0; r < n(); ++r)
            for (int c = 0; c < n(); ++c)
                if (std::abs(m(r, c)) > drop)
                    out.push_back({r / d, r % d, c / d, c % d, m(r, c)});
        return out;
    }
};

// Four-party pure state |psi> in C^d^4, amplitudes indexed by (i,a,j,b),
// flat index nested in that order.
struct StateVector {
    int d = 0;
    Vec amps;

    StateVector() = default;
    explicit StateVector(int d_) : d(d_), amps(Vec::Zero(d_ * d_ * d_ * d_)) {}

    cxd& at(int i, int a, int j, int b) {
        return amps(((i * d + a) * d + j) * d + b);
    }
    cxd at(int i, int a, int j, int b) const {
        return amps(((i * d + a) * d + j) * d + b);
    }
    double norm() const { return amps.norm(); }
};

}  // namespace ame
