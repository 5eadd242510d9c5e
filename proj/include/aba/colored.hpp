#pragma once

// Colored vertex model at roots of unity with additive spectral dependence:
// the two-parameter braid of Deguchi-Akutsu type, its Baxterization through
// eigenvalue projectors, and the on-shell/off-shell closed forms. Every
// coprime color branch k is first-class.

#include <numeric>

#include "aba/eig.hpp"
#include "aba/provider.hpp"
#include "aba/xxz.hpp"

namespace aba::colored {

struct Spec {
    int N = 3;
    int k = 1;       // coprime color branch
    Cplx gamma_bar;  // free parameter
    Cplx omega;      // exp(2 pi i k / N), derived; independent omega is rejected

    Spec(int N_, int k_, Cplx gamma_bar_) : N(N_), k(k_), gamma_bar(gamma_bar_) {
        require(N >= 2, "ColoredSpec: N must be >= 2");
        require(1 <= k && k <= N - 1, "ColoredSpec: k must lie in 1..N-1");
        require(std::gcd(k, N) == 1, "ColoredSpec: k must be coprime with N");
        omega = std::exp(2.0 * PI * I * double(k) / double(N));
        for (int j = 1; j <= N; ++j)
            if (std::abs(gamma_bar - (-I * PI * double(k) * double(j - 1) / double(N))) < 1e-8)
                throw std::invalid_argument("ColoredSpec: gamma_bar within 1e-8 of a pole line");
    }

    /// Skips the pole-line validation. Used to evaluate the closed formulas
    /// at degenerate points such as the XXZ specialization, where matrix
    /// construction would fail but theta/Lambda/F remain finite.
    static Spec unchecked(int N_, int k_, Cplx gamma_bar_) {
        Spec s(N_, k_, Cplx(0.1, 0.1));
        s.gamma_bar = gamma_bar_;
        return s;
    }
};

/// H(x, n) = prod_{k=0..n-1} (1 - x omega^k); empty product = 1.
inline Cplx h_func(Cplx x, int n, Cplx omega) {
    require(n >= 0, "h_func: n must be >= 0");
    Cplx out = 1.0;
    for (int j = 0; j < n; ++j) out *= 1.0 - x * std::pow(omega, j);
    return out;
}

/// Braid amplitude; radicals are evaluated factor-by-factor (principal root
/// of each 1 - x omega^k) so every entry shares one branch gauge.
inline Cplx braid_weight(const Spec& spec, int a, int b, int c, int d) {
    int N = spec.N;
    require(1 <= a && a <= N && 1 <= b && b <= N && 1 <= c && c <= N && 1 <= d && d <= N,
            "colored braid_weight: index out of range");
    if (a + b != c + d || a < d || c < b) return 0.0;
    Cplx w = spec.omega, e2g = std::exp(2.0 * spec.gamma_bar);
    Cplx hden = h_func(w, a - d, w);
    if (std::abs(hden) < 1e-14)
        throw std::invalid_argument("colored braid_weight: vanishing H(omega, a-d)");
    auto sqrt_h = [&](Cplx x, int n) {  // sqrt of H(x, n), factor by factor
        Cplx out = 1.0;
        for (int k = 0; k < n; ++k) out *= std::sqrt(1.0 - x * std::pow(w, k));
        return out;
    };
    Cplx pre = std::pow(w, double((b - 1) * (d - 1))) * std::exp(spec.gamma_bar * double(b + d - 2));
    Cplx r1 = sqrt_h(w, a - 1) * sqrt_h(w, c - 1) / (sqrt_h(w, d - 1) * sqrt_h(w, b - 1));
    Cplx r2 = sqrt_h(e2g, a - 1) * sqrt_h(e2g, c - 1) / (sqrt_h(e2g, d - 1) * sqrt_h(e2g, b - 1));
    return pre / hden * r1 * r2;
}

inline Matrix braid_matrix(const Spec& spec) {
    int N = spec.N;
    Matrix S = Matrix::Zero(N * N, N * N);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            for (int c = 1; c <= N; ++c)
                for (int d = 1; d <= N; ++d) {
                    Cplx v = braid_weight(spec, a, b, c, d);
                    if (v != Cplx(0.0)) S((b - 1) * N + (a - 1), (d - 1) * N + (c - 1)) += v;
                }
    return S;
}

/// Braid eigenvalues xi_i = (-1)^{i+1} omega^{(i-2)(i-1)/2} exp(2 gamma_bar (i-1)).
inline Cplx xi(const Spec& spec, int i) {
    require(1 <= i && i <= spec.N, "xi: index out of range");
    return std::pow(-1.0, i + 1) * std::pow(spec.omega, (i - 2) * (i - 1) / 2.0) *
           std::exp(2.0 * spec.gamma_bar * double(i - 1));
}

/// Baxterization scalars rho_i(lam) fixed by unitarity and the braid limit.
inline Cplx rho(const Spec& spec, int i, Cplx lam, double pole_tol = 1e-8) {
    require(1 <= i && i <= spec.N, "rho: index out of range");
    Cplx out = 1.0;
    for (int j = i; j <= spec.N - 1; ++j) {
        Cplx ratio = xi(spec, j + 1) / xi(spec, j);
        out *= guarded_div(1.0 + std::exp(2.0 * lam) * ratio, std::exp(2.0 * lam) + ratio,
                           pole_tol, "rho denominator");
    }
    return out;
}

/// Interpolation form of the projector onto the xi_i eigenspace.
inline Matrix projector_interpolation(const Spec& spec, int i, const Matrix* braid = nullptr) {
    int N = spec.N;
    require(1 <= i && i <= N, "colored projector: index out of range");
    Matrix S = braid ? *braid : braid_matrix(spec);
    Matrix P = eye(N * N);
    Cplx xi_i = xi(spec, i);
    for (int k2 = 1; k2 <= N; ++k2) {
        if (k2 == i) continue;
        Cplx xi_k = xi(spec, k2);
        if (std::abs(xi_i - xi_k) < 1e-10)
            throw NonGenericError("colored projector: xi collision for pair (" + std::to_string(i) +
                                  "," + std::to_string(k2) + ")");
        P = P * (S - xi_k * eye(N * N)) / (xi_i - xi_k);
    }
    return refine_projector(P);
}

/// Eigenvalue-to-projector matching: the braid spectrum is grouped by
/// proximity to the analytic xi_i (tolerance 1e-8) and the projectors built
/// from the eigenvector basis. Throws when the matching is not one-to-one.
inline std::vector<Matrix> projectors(const Spec& spec) {
    int N = spec.N;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            if (std::abs(xi(spec, i) - xi(spec, j)) < 1e-10)
                throw NonGenericError("colored projectors: xi collision for pair (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
    std::vector<Cplx> targets;
    for (int i = 1; i <= N; ++i) targets.push_back(xi(spec, i));
    return projectors_by_eigenvalue(braid_matrix(spec), N, targets);
}

/// Normalized R-check: coefficient on P_l is
/// prod_{j=1..l-1} sinh(i pi k (j-1)/N + gb - delta) / sinh(i pi k (j-1)/N + gb + delta),
/// which makes the highest-weight amplitude exactly 1.
inline Matrix rcheck_matrix(const Spec& spec, Cplx lam, Cplx mu, double pole_tol = 1e-8,
                            const std::vector<Matrix>* cached_proj = nullptr) {
    int N = spec.N;
    Cplx delta = lam - mu;
    std::vector<Matrix> proj_local;
    if (!cached_proj) proj_local = projectors(spec);
    const std::vector<Matrix>& proj = cached_proj ? *cached_proj : proj_local;
    Matrix R = proj[0];
    Cplx coeff = 1.0;
    for (int l = 2; l <= N; ++l) {
        Cplx base = I * PI * double(spec.k) * double(l - 2) / double(N) + spec.gamma_bar;
        Cplx num = std::sinh(base - delta);
        Cplx den = std::sinh(base + delta);
        if (std::abs(num) < pole_tol || std::abs(den) < pole_tol)
            throw PoleError("colored rcheck: sinh(i pi k (j-1)/N + gamma_bar +/- delta) vanishes");
        coeff *= num / den;
        R += coeff * proj[l - 1];
    }
    return R;
}

inline Matrix r_matrix(const Spec& spec, Cplx lam, Cplx mu) {
    return permutation(spec.N) * rcheck_matrix(spec, lam, mu);
}

inline Cplx r_weight(const Spec& spec, Cplx lam, Cplx mu, int a, int b, int c, int d) {
    if (a + b != c + d) return 0.0;
    int N = spec.N;
    return r_matrix(spec, lam, mu)((a - 1) * N + (b - 1), (c - 1) * N + (d - 1));
}

inline Cplx diag_weight(const Spec& spec, Cplx lam, Cplx mu, int a, double pole_tol = 1e-8) {
    require(1 <= a && a <= spec.N, "colored diag_weight: index out of range");
    Cplx out = 1.0;
    for (int j = 1; j <= a - 1; ++j) {
        Cplx shift = I * PI * double(spec.k) * double(j - 1) / double(spec.N);
        out *= guarded_div(std::sinh(lam - mu + shift), std::sinh(lam - mu + spec.gamma_bar + shift),
                           pole_tol, "colored diag_weight denominator");
    }
    return out;
}

inline Cplx theta(const Spec& spec, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    Cplx delta = lam - mu;
    Cplx pk = I * PI * double(spec.k) / double(spec.N);
    Cplx out = guarded_div(std::sinh(delta - pk), std::sinh(delta + pk), pole_tol, "colored theta");
    out *= guarded_div(std::sinh(delta - spec.gamma_bar), std::sinh(delta + spec.gamma_bar),
                       pole_tol, "colored theta");
    return out;
}

inline Cplx lambda_eig(const Spec& spec, const Lattice& lat, const std::vector<Cplx>& roots,
                       Cplx lam, double pole_tol = 1e-8) {
    int N = spec.N;
    Cplx pk = I * PI * double(spec.k) / double(N);
    Cplx sum = 0.0;
    for (int a = 1; a <= N; ++a) {
        Cplx term = 1.0;
        for (Cplx mu : lat.inhomogeneities)
            for (int j = 1; j <= a - 1; ++j)
                term *= guarded_div(std::sinh(lam - mu + pk * double(j - 1)),
                                    std::sinh(lam - mu + spec.gamma_bar + pk * double(j - 1)),
                                    pole_tol, "colored lambda_eig site product");
        for (Cplx lj : roots) {
            Cplx d = lam - lj;
            Cplx num = std::sinh(d - spec.gamma_bar) * std::sinh(d - pk);
            Cplx den = std::sinh(d - pk * double(1 - a)) * std::sinh(d - pk * double(2 - a));
            term *= guarded_div(num, den, pole_tol * pole_tol, "colored lambda_eig root product");
        }
        sum += term;
    }
    return sum;
}

inline std::vector<Cplx> bae_residual(const Spec& spec, const Lattice& lat,
                                      const std::vector<Cplx>& roots, double pole_tol = 1e-8) {
    int n = int(roots.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(std::abs(roots[i] - roots[j]) > 1e-9, "colored bae_residual: coincident roots");
    Cplx pk = I * PI * double(spec.k) / double(spec.N);
    std::vector<Cplx> res(n);
    for (int j = 0; j < n; ++j) {
        Cplx acc = 0.0;
        for (Cplx mu : lat.inhomogeneities)
            acc += std::log(guarded_div(std::sinh(roots[j] - mu + spec.gamma_bar),
                                        std::sinh(roots[j] - mu), pole_tol, "colored bae site"));
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            acc -= std::log(guarded_div(std::sinh(roots[j] - roots[i] - pk),
                                        std::sinh(roots[j] - roots[i] + pk), pole_tol,
                                        "colored bae root"));
        }
        res[j] = xxz::mod_2pii(acc);
    }
    return res;
}

inline Cplx f1_closed(const Spec& spec, int a, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    require(1 <= a && a <= spec.N - 1, "colored f1_closed: a out of range");
    Cplx pk = I * PI * double(spec.k) / double(spec.N);
    Cplx num = std::sqrt(std::sinh(spec.gamma_bar) * std::sinh(pk * double(a)) *
                         std::sinh(spec.gamma_bar + pk * double(a - 1)));
    Cplx den = std::sqrt(std::sinh(pk)) * std::sinh(mu - lam - pk * double(a - 1));
    return std::exp(mu - lam) * guarded_div(num, den, pole_tol, "colored f1_closed denominator");
}

inline Cplx g1_const(const Spec& spec, int a, int b) {
    Cplx pk = I * PI * double(spec.k) / double(spec.N);
    Cplx out = 1.0;
    for (int l = 1; l <= b - 1; ++l)
        out *= std::sqrt(std::sinh(spec.gamma_bar + pk * double(a + l - 2)) /
                         std::sinh(spec.gamma_bar + pk * double(a + b - 2)) *
                         std::sinh(pk * double(a + b - 1 - l)) / std::sinh(pk * double(a + b - 1)));
    return out;
}

inline Cplx g2_const(const Spec& spec, int a, int b) {
    Cplx pk = I * PI * double(spec.k) / double(spec.N);
    Cplx out = 1.0;
    for (int l = 1; l <= b - 1; ++l)
        out *= std::sqrt(std::sinh(spec.gamma_bar + pk * double(a + l - 1)) /
                         std::sinh(spec.gamma_bar + pk * double(a - 1)) *
                         std::sinh(pk * double(a + b - l)) / std::sinh(pk * double(a)));
    return out;
}

inline Cplx f_closed(const Spec& spec, int c, int b, int a, Cplx lam,
                     const std::vector<Cplx>& raps, double pole_tol = 1e-8) {
    int N = spec.N;
    require(b >= 1 && b <= N - 1, "colored f_closed: b out of range");
    require(a >= 1 && a <= N - b, "colored f_closed: a out of range");
    require(c == 0 || c == b, "colored f_closed: closed forms cover c in {0, b}");
    require(int(raps.size()) == b, "colored f_closed: need b rapidities");
    Cplx pk = I * PI * double(spec.k) / double(spec.N);
    Cplx pairs = 1.0;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j)
            pairs *= guarded_div(std::sinh(raps[i] - raps[j] - spec.gamma_bar),
                                 std::sinh(raps[i] - raps[j] + pk), pole_tol,
                                 "colored f_closed pair factor");
    Cplx out;
    if (c == 0) {
        out = g1_const(spec, a, b) * pairs;
        for (Cplx li : raps) out *= f1_closed(spec, a + b - 1, lam, li, pole_tol);
    } else {
        out = g2_const(spec, a, b) * pairs;
        for (Cplx li : raps) out *= -f1_closed(spec, a, lam, li, pole_tol);
    }
    return out;
}

/// Special point gamma_bar = -(N-1) i pi k / N where the model reduces to the
/// XXZ-s chain with gamma = -pi k / N. The returned spec is formulas-only
/// (q is a root of unity there).
inline xxz::Spec specialize_to_xxz(const Spec& spec) {
    return xxz::Spec(spec.N, -PI * double(spec.k) / double(spec.N));
}

inline Cplx special_gamma_bar(int N, int k) { return -double(N - 1) * I * PI * double(k) / double(N); }

/// One-particle solver seeds from sinh(lambda + gamma_bar)/sinh(lambda) = z
/// at the L-th roots of unity z.
inline std::vector<Cplx> momentum_seeds(const Spec& spec, int L) {
    std::vector<Cplx> out;
    for (int m = 0; m < L; ++m) {
        Cplx z = std::exp(2.0 * PI * I * double(m) / double(L));
        Cplx den = std::exp(spec.gamma_bar) - z;
        if (std::abs(den) < 1e-12) continue;
        Cplx e2l = (std::exp(-spec.gamma_bar) - z) / den;
        if (std::abs(e2l) < 1e-12) continue;
        out.push_back(0.5 * std::log(e2l));
    }
    return out;
}

inline WeightProvider provider(const Spec& spec) {
    Spec s = spec;
    auto proj = std::make_shared<std::vector<Matrix>>(projectors(spec));
    Matrix perm = permutation(spec.N);
    WeightProvider p = make_matrix_provider(
        "colored(N=" + std::to_string(spec.N) + ",k=" + std::to_string(spec.k) + ")", spec.N,
        [s, proj, perm](Cplx lam, Cplx mu) {
            return Matrix(perm * rcheck_matrix(s, lam, mu, 1e-8, proj.get()));
        },
        [s](Cplx lam, Cplx mu) { return theta(s, lam, mu); });
    p.rapidity_period_im = PI;
    return p;
}

}  // namespace aba::colored
