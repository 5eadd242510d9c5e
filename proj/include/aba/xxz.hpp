#pragma once

// Spin-s XXZ vertex model: the N-state R-matrix built from the U_q[SU(2)]
// braid and its interpolation projectors, plus the model's on-shell
// (eigenvalue, Bethe equations) and off-shell (amplitude) closed forms.

#include "aba/eig.hpp"
#include "aba/provider.hpp"

namespace aba::xxz {

struct Spec {
    int N = 2;        // bond states, s = (N-1)/2
    double gamma = 0;  // anisotropy
    Cplx q;            // exp(-2 i gamma)
    bool formulas_only = false;  // set when q is non-generic (q^m = 1, m <= 2N)

    Spec(int N_, double gamma_, int cap = 8) : N(N_), gamma(gamma_) {
        require(N >= 2, "XxzSpec: N must be >= 2");
        require(N <= cap, "XxzSpec: N above configured cap");
        q = std::exp(-2.0 * I * gamma);
        for (int m = 1; m <= 2 * N; ++m)
            if (std::abs(std::pow(q, m) - 1.0) < 1e-8) formulas_only = true;
    }
};

/// W_eps(n) = prod_{k=1..n} (1 - q^{k - eps N}); empty product = 1.
inline Cplx w_func(Cplx q, int n, int eps, int N) {
    require(n >= 0, "w_func: n must be >= 0");
    require(eps == 0 || eps == 1, "w_func: eps must be 0 or 1");
    Cplx out = 1.0;
    for (int k = 1; k <= n; ++k) out *= 1.0 - std::pow(q, k - eps * N);
    return out;
}

/// Braid amplitude S_{c,d}^{a,b}(q); zero off the range a >= d, c >= b and
/// off the ice line a+b = c+d. Every radical is taken factor-by-factor
/// (principal square root of each 1 - q^{k - eps N}) so all entries share
/// one branch gauge; the braid relation fixes the remaining freedom.
inline Cplx braid_weight(const Spec& spec, int a, int b, int c, int d) {
    int N = spec.N;
    require(1 <= a && a <= N && 1 <= b && b <= N && 1 <= c && c <= N && 1 <= d && d <= N,
            "braid_weight: index out of range");
    if (a + b != c + d || a < d || c < b) return 0.0;
    Cplx q = spec.q;
    double expnt = N * (N - 1) / 2.0 + (b - 1) * (d - N) / 2.0 + (d - 1) * (b - N) / 2.0;
    auto sqrt_w = [&](int n, int eps) {  // sqrt of W_eps(n), factor by factor
        Cplx out = 1.0;
        for (int k = 1; k <= n; ++k) out *= std::sqrt(1.0 - std::pow(q, k - eps * N));
        return out;
    };
    Cplx ratio = 1.0;
    for (int eps = 0; eps <= 1; ++eps)
        ratio *= sqrt_w(a - 1, eps) * sqrt_w(c - 1, eps) / (sqrt_w(d - 1, eps) * sqrt_w(b - 1, eps));
    return -std::pow(-1.0, N) * std::pow(q, expnt) / (sqrt_w(a - d, 0) * sqrt_w(c - b, 0)) * ratio;
}

/// S-hat(q) = sum S_{c,d}^{a,b} e_{b,d} (x) e_{a,c} on C^N (x) C^N.
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

/// Braid eigenvalue on the spin-j module: (-1)^j q^{j(j+1)/2}.
inline Cplx braid_eigenvalue(const Spec& spec, int j) {
    return std::pow(-1.0, j) * std::pow(spec.q, j * (j + 1) / 2.0);
}

/// Interpolation projector P-check_j(q); throws NonGenericError naming the
/// colliding pair when two braid eigenvalues degenerate.
inline Matrix projector(const Spec& spec, int j, const Matrix* braid = nullptr) {
    int N = spec.N;
    require(0 <= j && j <= N - 1, "projector: j out of range");
    Matrix S = braid ? *braid : braid_matrix(spec);
    Matrix P = eye(N * N);
    Cplx sj = braid_eigenvalue(spec, j);
    for (int k = 0; k <= N - 1; ++k) {
        if (k == j) continue;
        Cplx sk = braid_eigenvalue(spec, k);
        if (std::abs(sj - sk) < 1e-10)
            throw NonGenericError("projector: degenerate interpolation denominator for pair (j,k) = (" +
                                  std::to_string(j) + "," + std::to_string(k) + ")");
        P = P * (S - sk * eye(N * N)) / (sj - sk);
    }
    return refine_projector(P);
}

/// Full projector family by the interpolation product, evaluated in long
/// double. The braid eigenvalues sit on the unit circle, so the product is
/// only moderately conditioned; the extra mantissa keeps the downstream
/// weights at full double accuracy. Results are cast back to double.
inline std::vector<Matrix> projectors(const Spec& spec) {
    using LCplx = std::complex<long double>;
    using LMatrix = Eigen::Matrix<LCplx, Eigen::Dynamic, Eigen::Dynamic>;
    int N = spec.N;
    LCplx q = std::exp(LCplx(0.0L, -2.0L * (long double)spec.gamma));
    auto qpow = [&](long double e) { return std::exp(e * std::log(q)); };
    auto eigval = [&](int j) {
        return (j % 2 ? LCplx(-1.0L) : LCplx(1.0L)) * qpow(j * (j + 1) / 2.0L);
    };
    for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k)
            if (std::abs(eigval(j) - eigval(k)) < 1e-10L)
                throw NonGenericError("xxz projectors: degenerate pair (j,k) = (" +
                                      std::to_string(j) + "," + std::to_string(k) + ")");
    auto sqrt_w = [&](int n, int eps) {
        LCplx out = 1.0L;
        for (int k = 1; k <= n; ++k) out *= std::sqrt(LCplx(1.0L) - qpow(k - eps * N));
        return out;
    };
    LMatrix S = LMatrix::Zero(N * N, N * N);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            for (int c = 1; c <= N; ++c)
                for (int d = 1; d <= N; ++d) {
                    if (a + b != c + d || a < d || c < b) continue;
                    long double expnt =
                        N * (N - 1) / 2.0L + (b - 1) * (d - N) / 2.0L + (d - 1) * (b - N) / 2.0L;
                    LCplx ratio = 1.0L;
                    for (int eps = 0; eps <= 1; ++eps)
                        ratio *= sqrt_w(a - 1, eps) * sqrt_w(c - 1, eps) /
                                 (sqrt_w(d - 1, eps) * sqrt_w(b - 1, eps));
                    LCplx v = (N % 2 ? LCplx(1.0L) : LCplx(-1.0L)) * qpow(expnt) /
                              (sqrt_w(a - d, 0) * sqrt_w(c - b, 0)) * ratio;
                    S((b - 1) * N + (a - 1), (d - 1) * N + (c - 1)) += v;
                }
    std::vector<Matrix> out;
    for (int j = 0; j < N; ++j) {
        LMatrix P = LMatrix::Identity(N * N, N * N);
        for (int k = 0; k < N; ++k) {
            if (k == j) continue;
            P = P * (S - eigval(k) * LMatrix::Identity(N * N, N * N)) / (eigval(j) - eigval(k));
        }
        Matrix pd(N * N, N * N);
        for (int r = 0; r < N * N; ++r)
            for (int c = 0; c < N * N; ++c)
                pd(r, c) = Cplx(double(P(r, c).real()), double(P(r, c).imag()));
        out.push_back(std::move(pd));
    }
    return out;
}

/// R-check(lam,mu) normalized so the highest-weight amplitude is 1:
/// coefficient on P_j is prod_{k=j+1..N-1} sinh(ik gamma - delta)/sinh(ik gamma + delta).
inline Matrix rcheck_matrix(const Spec& spec, Cplx lam, Cplx mu, double pole_tol = 1e-8,
                            const std::vector<Matrix>* cached_proj = nullptr) {
    int N = spec.N;
    Cplx delta = lam - mu;
    std::vector<Matrix> proj_local;
    if (!cached_proj) proj_local = projectors(spec);
    const std::vector<Matrix>& proj = cached_proj ? *cached_proj : proj_local;
    Matrix R = Matrix::Zero(N * N, N * N);
    Cplx coeff = 1.0;
    R += proj[N - 1];
    for (int j = N - 2; j >= 0; --j) {
        Cplx num = std::sinh(I * double(j + 1) * spec.gamma - delta);
        Cplx den = std::sinh(I * double(j + 1) * spec.gamma + delta);
        if (std::abs(num) < pole_tol || std::abs(den) < pole_tol)
            throw PoleError("rcheck_matrix: sinh(i k gamma +/- (lam-mu)) vanishes at k = " +
                            std::to_string(j + 1));
        coeff *= num / den;
        R += coeff * proj[j];
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

/// R_{a,1}^{a,1} = prod_{k=1..a-1} sinh(delta - i(k-1)gamma)/sinh(delta + i(N-k)gamma).
inline Cplx diag_weight(const Spec& spec, Cplx lam, Cplx mu, int a, double pole_tol = 1e-8) {
    require(1 <= a && a <= spec.N, "diag_weight: index out of range");
    Cplx delta = lam - mu, out = 1.0;
    for (int k = 1; k <= a - 1; ++k)
        out *= guarded_div(std::sinh(delta - I * double(k - 1) * spec.gamma),
                           std::sinh(delta + I * double(spec.N - k) * spec.gamma), pole_tol,
                           "diag_weight denominator");
    return out;
}

inline Cplx theta(const Spec& spec, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    Cplx delta = lam - mu;
    double g = spec.gamma;
    int N = spec.N;
    Cplx out = guarded_div(std::sinh(delta - I * double(N - 1) * g),
                           std::sinh(delta + I * double(N - 1) * g), pole_tol, "theta");
    out *= guarded_div(std::sinh(delta + I * g), std::sinh(delta - I * g), pole_tol, "theta");
    return out;
}

/// Transfer-matrix eigenvalue Lambda_n(lam) for given Bethe roots.
inline Cplx lambda_eig(const Spec& spec, const Lattice& lat, const std::vector<Cplx>& roots,
                       Cplx lam, double pole_tol = 1e-8) {
    int N = spec.N;
    double g = spec.gamma;
    Cplx sum = 0.0;
    for (int a = 1; a <= N; ++a) {
        Cplx term = 1.0;
        for (Cplx mu : lat.inhomogeneities)
            for (int k = 1; k <= a - 1; ++k)
                term *= guarded_div(std::sinh(lam - mu - I * double(k - 1) * g),
                                    std::sinh(lam - mu + I * double(N - k) * g), pole_tol,
                                    "lambda_eig site product");
        for (Cplx lj : roots) {
            Cplx d = lam - lj;
            Cplx num = std::sinh(d - I * double(N - 1) * g) * std::sinh(d + I * g);
            Cplx den = std::sinh(d - I * double(a - 1) * g) * std::sinh(d - I * double(a - 2) * g);
            term *= guarded_div(num, den, pole_tol * pole_tol, "lambda_eig root product");
        }
        sum += term;
    }
    return sum;
}

/// Wraps Im(z) into (-pi, pi] by subtracting the nearest 2 pi i multiple.
inline Cplx mod_2pii(Cplx z) {
    double k = std::round(z.imag() / (2.0 * PI));
    return z - Cplx(0.0, 2.0 * PI * k);
}

/// Log-form Bethe residuals; `symmetric_shift` interprets the inputs in the
/// shifted convention lambda_j -> lambda_j - i(N-1)gamma/2.
inline std::vector<Cplx> bae_residual(const Spec& spec, const Lattice& lat,
                                      const std::vector<Cplx>& roots_in,
                                      bool symmetric_shift = false, double pole_tol = 1e-8) {
    int N = spec.N;
    double g = spec.gamma;
    std::vector<Cplx> roots = roots_in;
    if (symmetric_shift)
        for (Cplx& r : roots) r -= I * double(N - 1) * g / 2.0;
    int n = int(roots.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(std::abs(roots[i] - roots[j]) > 1e-9, "bae_residual: coincident roots");
    std::vector<Cplx> res(n);
    for (int j = 0; j < n; ++j) {
        Cplx acc = 0.0;
        for (Cplx mu : lat.inhomogeneities) {
            Cplx num = std::sinh(roots[j] - mu + I * double(N - 1) * g);
            Cplx den = std::sinh(roots[j] - mu);
            acc += std::log(guarded_div(num, den, pole_tol, "bae site factor"));
        }
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            Cplx num = std::sinh(roots[j] - roots[i] + I * g);
            Cplx den = std::sinh(roots[j] - roots[i] - I * g);
            acc -= std::log(guarded_div(num, den, pole_tol, "bae root factor"));
        }
        res[j] = mod_2pii(acc);
    }
    return res;
}

/// 0F1^(a)(lam, mu) = -1F1^(a)(lam, mu), the one-particle off-shell amplitude.
inline Cplx f1_closed(const Spec& spec, int a, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    int N = spec.N;
    double g = spec.gamma;
    require(1 <= a && a <= N - 1, "f1_closed: a out of range");
    Cplx num = std::sqrt(std::sinh(I * double(N - 1) * g) * std::sinh(I * double(N - a) * g) *
                         std::sinh(I * double(a) * g));
    Cplx den = std::sqrt(std::sinh(I * g)) * std::sinh(I * double(a - 1) * g - lam + mu);
    return std::exp(mu - lam) * guarded_div(num, den, pole_tol, "f1_closed denominator");
}

/// Rapidity-independent ladder constant G0^(a,b)(gamma).
inline Cplx g0_const(const Spec& spec, int a, int b) {
    double g = spec.gamma;
    int N = spec.N;
    Cplx out = 1.0;
    for (int l = 1; l <= b - 1; ++l)
        out *= std::sqrt(std::sinh(I * double(a + b - 1 - l) * g) /
                         std::sinh(I * double(a + b - 1) * g) *
                         std::sinh(I * double(N + 1 - a - l) * g) /
                         std::sinh(I * double(N + 1 - a - b) * g));
    return out;
}

/// Closed-form factorized amplitudes cFb^(a) for the extremum cases c = 0
/// and c = b; intermediate c values come from the generic engine factorization.
inline Cplx f_closed(const Spec& spec, int c, int b, int a, Cplx lam,
                     const std::vector<Cplx>& raps, double pole_tol = 1e-8) {
    int N = spec.N;
    require(b >= 1 && b <= N - 1, "f_closed: b out of range");
    require(a >= 1 && a <= N - b, "f_closed: a out of range");
    require(c == 0 || c == b, "f_closed: closed forms cover c in {0, b}");
    require(int(raps.size()) == b, "f_closed: need b rapidities");
    double g = spec.gamma;
    Cplx pairs = 1.0;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j)
            pairs *= guarded_div(std::sinh(raps[i] - raps[j] - I * double(N - 1) * g),
                                 std::sinh(raps[i] - raps[j] - I * g), pole_tol,
                                 "f_closed pair factor");
    Cplx out;
    if (c == 0) {
        out = g0_const(spec, a, b) * pairs;
        for (Cplx li : raps) out *= f1_closed(spec, a + b - 1, lam, li, pole_tol);
    } else {
        out = g0_const(spec, N + 1 - a - b, b) * pairs;
        for (Cplx li : raps) out *= -f1_closed(spec, a, lam, li, pole_tol);
    }
    return out;
}

/// One-particle seeds for the root solver: rapidities solving the L-site
/// homogeneous one-particle equation at free momenta p = 2 pi m / L,
/// sinh(lambda + i(N-1)gamma)/sinh(lambda) = exp(i p).
inline std::vector<Cplx> momentum_seeds(const Spec& spec, int L) {
    std::vector<Cplx> out;
    Cplx idelta = I * double(spec.N - 1) * spec.gamma;
    for (int m = 0; m < L; ++m) {
        Cplx z = std::exp(2.0 * PI * I * double(m) / double(L));
        Cplx den = std::exp(idelta) - z;
        if (std::abs(den) < 1e-12) continue;
        Cplx e2l = (std::exp(-idelta) - z) / den;
        if (std::abs(e2l) < 1e-12) continue;
        out.push_back(0.5 * std::log(e2l));
    }
    return out;
}

inline WeightProvider provider(const Spec& spec) {
    if (spec.formulas_only)
        throw NonGenericError("xxz::provider: q is non-generic; weights unavailable");
    Spec s = spec;
    auto proj = std::make_shared<std::vector<Matrix>>(projectors(spec));
    Matrix perm = permutation(spec.N);
    WeightProvider p = make_matrix_provider(
        "xxz(N=" + std::to_string(spec.N) + ")", spec.N,
        [s, proj, perm](Cplx lam, Cplx mu) {
            return Matrix(perm * rcheck_matrix(s, lam, mu, 1e-8, proj.get()));
        },
        [s](Cplx lam, Cplx mu) { return theta(s, lam, mu); });
    p.rapidity_period_im = PI;
    return p;
}

}  // namespace aba::xxz
