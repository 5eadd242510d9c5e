#pragma once

#include <Eigen/Eigenvalues>

#include "aba/linalg.hpp"

namespace aba {

struct EigResult {
    std::vector<Cplx> values;
    Matrix vectors;        // columns are eigenvectors, same order as values
    double max_residual;   // max_i ||A v_i - w_i v_i|| / ||A||
};

/// Dense complex eigen-decomposition with a residual certificate.
/// Throws ConvergenceError when the per-pair residual exceeds `tol`.
inline EigResult eig(const Matrix& A, double tol = 1e-10) {
    require(A.rows() == A.cols(), "eig: matrix must be square");
    Eigen::ComplexEigenSolver<Matrix> solver(A, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig: QR iteration did not converge");
    EigResult out;
    out.vectors = solver.eigenvectors();
    out.values.resize(A.rows());
    double normA = std::max(A.norm(), 1e-300);
    out.max_residual = 0.0;
    for (long i = 0; i < A.rows(); ++i) {
        out.values[i] = solver.eigenvalues()(i);
        double r = (A * out.vectors.col(i) - out.values[i] * out.vectors.col(i)).norm() / normA;
        out.max_residual = std::max(out.max_residual, r);
    }
    if (out.max_residual > tol)
        throw ConvergenceError("eig: residual " + std::to_string(out.max_residual) +
                               " above tolerance " + std::to_string(tol));
    return out;
}

/// Cubic idempotent refinement P <- 3P^2 - 2P^3, applied while it actually
/// reduces ||P^2 - P||. For a projector built as a polynomial in some matrix
/// S the refinement stays a polynomial in S, so pairwise orthogonality
/// tightens along with idempotency.
inline Matrix refine_projector(const Matrix& p, int max_rounds = 3) {
    Matrix out = p;
    double err = (out * out - out).norm();
    for (int r = 0; r < max_rounds; ++r) {
        Matrix p2 = out * out;
        Matrix cand = 3.0 * p2 - 2.0 * (p2 * out);
        double cand_err = (cand * cand - cand).norm();
        if (cand_err >= err) break;
        out = std::move(cand);
        err = cand_err;
    }
    return out;
}

/// Projectors onto the eigenspaces of a two-site ice-rule operator, grouped
/// by proximity of the numerical spectrum to the analytic target values
/// (tolerance `match_tol`). The operator is block diagonal over the two-site
/// charge, so each charge block (dimension <= N) is diagonalized on its own;
/// that keeps the ice structure exact and the eigenbases well conditioned.
/// Throws when the eigenvalue-to-target matching is not one-to-one.
inline std::vector<Matrix> projectors_by_eigenvalue(const Matrix& op, int N,
                                                    const std::vector<Cplx>& targets,
                                                    double match_tol = 1e-8) {
    int m = int(targets.size());
    std::vector<Matrix> out(m, Matrix::Zero(N * N, N * N));
    for (int charge = 0; charge <= 2 * (N - 1); ++charge) {
        std::vector<int> idx;
        for (int a = 1; a <= N; ++a)
            for (int b = 1; b <= N; ++b)
                if (a + b - 2 == charge) idx.push_back((b - 1) * N + (a - 1));
        Matrix block(idx.size(), idx.size());
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c) block(r, c) = op(idx[r], idx[c]);
        EigResult ed = eig(block);
        Matrix vinv = ed.vectors.inverse();
        for (size_t v = 0; v < ed.values.size(); ++v) {
            int member = -1;
            for (int i = 0; i < m; ++i)
                if (std::abs(ed.values[v] - targets[i]) < match_tol) {
                    require(member < 0, "projectors_by_eigenvalue: eigenvalue matches two targets");
                    member = i;
                }
            require(member >= 0, "projectors_by_eigenvalue: eigenvalue matches no target");
            for (size_t r = 0; r < idx.size(); ++r)
                for (size_t c = 0; c < idx.size(); ++c)
                    out[member](idx[r], idx[c]) += ed.vectors(r, v) * vinv(v, c);
        }
    }
    for (Matrix& p : out) p = refine_projector(p);
    return out;
}

/// Spectral projectors for groups of (near-)equal eigenvalues: for each index
/// group g, P_g = V 1_g V^{-1}. Eigenvalues inside a group must agree pairwise
/// within `tol`; the groups must cover the whole spectrum.
inline std::vector<Matrix> spectral_projectors(const Matrix& A,
                                               const std::vector<std::vector<int>>& groups,
                                               double tol) {
    EigResult ed = eig(A);
    long n = A.rows();
    std::vector<char> seen(n, 0);
    for (const auto& g : groups)
        for (int i : g) {
            require(i >= 0 && i < n, "spectral_projectors: index out of range");
            require(!seen[i], "spectral_projectors: index repeated across groups");
            seen[i] = 1;
            for (int j : g)
                if (std::abs(ed.values[i] - ed.values[j]) > tol)
                    throw std::invalid_argument(
                        "spectral_projectors: group mixes eigenvalues differing by more than tol");
        }
    for (long i = 0; i < n; ++i)
        require(seen[i], "spectral_projectors: groups must cover the spectrum");

    Matrix Vinv = ed.vectors.inverse();
    std::vector<Matrix> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        Matrix sel = Matrix::Zero(n, n);
        for (int i : g) sel(i, i) = 1.0;
        out.push_back(ed.vectors * sel * Vinv);
    }
    return out;
}

}  // namespace aba
