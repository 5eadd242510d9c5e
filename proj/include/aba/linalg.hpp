#pragma once

#include <Eigen/Dense>

#include "aba/types.hpp"

namespace aba {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr long DENSE_DIM_CAP = 20000;

/// N x N Weyl unit e_{a,b}: single 1 at row a, column b (1-based).
inline Matrix weyl(int N, int a, int b) {
    require(N >= 1, "weyl: N must be positive");
    require(1 <= a && a <= N && 1 <= b && b <= N, "weyl: index out of range");
    Matrix m = Matrix::Zero(N, N);
    m(a - 1, b - 1) = 1.0;
    return m;
}

/// Kronecker product with the left factor as the slow index, so that
/// kron(e_{a,c}, e_{b,d}) carries its 1 at row (a-1)*rB + b, col (c-1)*cB + d.
inline Matrix kron(const Matrix& A, const Matrix& B) {
    long rows = A.rows() * B.rows();
    long cols = A.cols() * B.cols();
    if (rows > DENSE_DIM_CAP || cols > DENSE_DIM_CAP)
        throw DimensionCapError("kron: result exceeds dense dimension cap");
    Matrix K(rows, cols);
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

/// P = sum_{a,b} e_{a,b} (x) e_{b,a} on C^N (x) C^N; P(u (x) v) = v (x) u.
inline Matrix permutation(int N) {
    require(N >= 2, "permutation: N must be >= 2");
    Matrix P = Matrix::Zero(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) P(a * N + b, b * N + a) = 1.0;
    return P;
}

/// Identity on an n-dimensional space.
inline Matrix eye(long n) { return Matrix::Identity(n, n); }

/// Embeds a two-site operator acting on tensor slots (i, j) of an L-fold
/// product of C^N spaces, 0-based slots, i != j. Used to place R_12, R_13,
/// R_23 on the three-site space for Yang-Baxter checks.
inline Matrix embed_two_site(const Matrix& op, int N, int L, int i, int j) {
    require(i != j && i >= 0 && j >= 0 && i < L && j < L, "embed_two_site: bad slots");
    long dim = 1;
    for (int k = 0; k < L; ++k) dim *= N;
    if (dim > DENSE_DIM_CAP) throw DimensionCapError("embed_two_site: dimension cap");
    Matrix out = Matrix::Zero(dim, dim);
    std::vector<long> stride(L);
    long acc = 1;
    for (int k = L - 1; k >= 0; --k) {
        stride[k] = acc;
        acc *= N;
    }
    std::vector<int> idx(L);
    for (long row = 0; row < dim; ++row) {
        long r = row;
        for (int k = 0; k < L; ++k) {
            idx[k] = int(r / stride[k]);
            r %= stride[k];
        }
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                Cplx v = op(idx[i] * N + idx[j], a * N + b);
                if (v == Cplx(0.0)) continue;
                long col = 0;
                for (int k = 0; k < L; ++k) {
                    int ik = (k == i) ? a : (k == j) ? b : idx[k];
                    col += ik * stride[k];
                }
                out(row, col) += v;
            }
    }
    return out;
}

inline double rel_residual(const Matrix& lhs, const Matrix& rhs) {
    double scale = std::max({lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff(), 1e-300});
    return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

}  // namespace aba
