#pragma once

// Colored vertex models with non-additive R-matrices: explicit weight tables
// for N = 2, 3, 4 plus the general-N on-shell/off-shell closed forms that
// were read off from them. Radicals are evaluated exactly as tabulated
// (principal branch); spectral parameters default to the real interval
// (-1, 1) where every per-variable radical argument stays principal.

#include "aba/provider.hpp"

namespace aba::nonadd {

inline std::vector<Cplx> omega_choices(int N) {
    switch (N) {
        case 2: return {Cplx(-1.0, 0.0)};
        case 3: return {std::exp(2.0 * PI * I / 3.0), -std::exp(PI * I / 3.0)};
        case 4: return {Cplx(0.0, 1.0), Cplx(0.0, -1.0)};
        default: return {};
    }
}

struct Spec {
    int N = 3;
    int omega_choice = 0;
    Cplx omega;
    bool allow_complex = false;  // complex spectral points behind an explicit flag

    Spec(int N_, int omega_choice_ = 0, bool allow_complex_ = false)
        : N(N_), omega_choice(omega_choice_), allow_complex(allow_complex_) {
        auto choices = omega_choices(N);
        require(!choices.empty(), "NonAddSpec: weight tables exist for N in {2,3,4}");
        require(0 <= omega_choice && omega_choice < int(choices.size()),
                "NonAddSpec: invalid omega choice for this N");
        omega = choices[omega_choice];
    }

    void check_domain(Cplx z) const {
        if (allow_complex) return;
        require(std::abs(z.imag()) < 1e-12 && std::abs(z.real()) < 1.0,
                "NonAddSpec: spectral parameter outside (-1,1); pass allow_complex to override");
    }
};

namespace detail {

inline Cplx n2_weight(Cplx l, Cplx m, int a, int b, int c, int d) {
    auto key = [&](int x, int y, int z, int w) { return a == x && b == y && c == z && d == w; };
    if (key(1, 1, 1, 1) || key(2, 2, 2, 2)) return 1.0 - l * m;
    if (key(1, 2, 1, 2)) return l - m;
    if (key(2, 1, 2, 1)) return m - l;
    if (key(1, 2, 2, 1) || key(2, 1, 1, 2)) return std::sqrt((1.0 - l * l) * (1.0 - m * m));
    return 0.0;
}

inline Cplx n3_weight(Cplx l, Cplx m, Cplx w, int a, int b, int c, int d) {
    auto key = [&](int x, int y, int z, int v) { return a == x && b == y && c == z && d == v; };
    if (key(1, 1, 1, 1) || key(3, 3, 3, 3)) return (1.0 - m * l) * (1.0 - m * l * w);
    if (key(1, 2, 1, 2)) return (l - m) * (1.0 - m * l * w);
    if (key(2, 1, 2, 1)) return -(l - m) * (1.0 - m * l * w);
    if (key(1, 2, 2, 1) || key(2, 1, 1, 2))
        return (1.0 - m * l * w) * std::sqrt((1.0 - m * m) * (1.0 - l * l));
    if (key(1, 3, 1, 3)) return (l - m) * (l - m * w);
    if (key(1, 3, 2, 2) || key(2, 2, 1, 3))
        return (l - m) * std::sqrt((1.0 - l * l) * (1.0 - m * m * w) * (1.0 + w));
    if (key(1, 3, 3, 1) || key(3, 1, 1, 3))
        return std::sqrt((1.0 - l * l) * (1.0 - l * l * w) * (1.0 - m * m) * (1.0 - m * m * w));
    if (key(2, 2, 2, 2)) return (1.0 - l * l) * (1.0 - m * m * w) - (m - l) * (m - l * w);
    if (key(2, 2, 3, 1) || key(3, 1, 2, 2))
        return (m - l) * std::sqrt((1.0 - m * m) * (1.0 - l * l * w) * (1.0 + w));
    if (key(2, 3, 2, 3)) return (1.0 + w) * (l - m) * (1.0 - m * l);
    if (key(3, 2, 3, 2)) return -(1.0 + w) * (l - m) * (1.0 - m * l);
    if (key(2, 3, 3, 2) || key(3, 2, 2, 3))
        return (1.0 - m * l) * std::sqrt((1.0 - m * m * w) * (1.0 - l * l * w));
    if (key(3, 1, 3, 1)) return (m - l) * (m - l * w);
    return 0.0;
}

inline Cplx n4_weight(Cplx l, Cplx m, Cplx w, int a, int b, int c, int d) {
    auto key = [&](int x, int y, int z, int v) { return a == x && b == y && c == z && d == v; };
    Cplx w2 = w * w;
    if (key(1, 1, 1, 1) || key(4, 4, 4, 4))
        return (1.0 - m * l) * (1.0 - m * l * w) * (1.0 - m * l * w2);
    if (key(1, 2, 1, 2)) return (l - m) * (1.0 - m * l * w) * (1.0 - m * l * w2);
    if (key(2, 1, 2, 1)) return (m - l) * (1.0 - m * l * w) * (1.0 - m * l * w2);
    if (key(1, 2, 2, 1) || key(2, 1, 1, 2))
        return std::sqrt((1.0 - m * m) * (1.0 - l * l)) * (1.0 - m * l * w) * (1.0 - m * l * w2);
    if (key(1, 3, 1, 3)) return (l - m) * (l - m * w) * (1.0 - m * l * w2);
    if (key(1, 3, 2, 2) || key(2, 2, 1, 3))
        return std::sqrt((1.0 - l * l) * (1.0 - m * m * w) * (1.0 + w)) * (l - m) * (1.0 - m * l * w2);
    if (key(1, 3, 3, 1) || key(3, 1, 1, 3))
        return std::sqrt((1.0 - l * l) * (1.0 - l * l * w) * (1.0 - m * m) * (1.0 - m * m * w)) *
               (1.0 - m * l * w2);
    if (key(2, 2, 2, 2))
        return ((1.0 - l * l) * (1.0 - m * m * w) - (m - l) * (m - l * w)) * (1.0 - m * l * w2);
    if (key(2, 2, 3, 1) || key(3, 1, 2, 2))
        return (m - l) * std::sqrt((1.0 - m * m) * (1.0 - l * l * w) * (1.0 + w)) * (1.0 - m * l * w2);
    if (key(2, 3, 2, 3))
        return (l - m) * ((1.0 - m * m * l * l) * (1.0 - w * w2) - w * (l - m * w) * (l - m));
    if (key(2, 3, 3, 2))
        return std::sqrt((1.0 - m * m * w) * (1.0 - l * l * w)) *
               ((1.0 - m * m) * (1.0 - l * l * w2) - (1.0 + w) * (l - m * w) * (l - m));
    if (key(3, 2, 2, 3))
        return ((1.0 - l * l) * (1.0 - m * m * w2) - (1.0 + w) * (m - l) * (m - l * w)) *
               std::sqrt((1.0 - l * l * w) * (1.0 - m * m * w));
    if (key(3, 2, 3, 2))
        return ((1.0 - l * l * m * m) * (1.0 + w) - w * (m - l) * (m - l * w)) * (m - l);
    if (key(3, 1, 3, 1)) return (m - l) * (m - l * w) * (1.0 - l * m * w2);
    if (key(1, 4, 4, 1) || key(4, 1, 1, 4))
        return std::sqrt((1.0 - l * l) * (1.0 - l * l * w) * (1.0 - l * l * w2)) *
               std::sqrt((1.0 - m * m) * (1.0 - m * m * w) * (1.0 - m * m * w2));
    if (key(1, 4, 3, 2) || key(3, 2, 1, 4))
        return std::sqrt((1.0 - l * l) * (1.0 - l * l * w)) *
               std::sqrt((1.0 - m * m * w) * (1.0 - m * m * w2)) * std::sqrt(1.0 + w + w2) * (l - m);
    if (key(1, 4, 2, 3) || key(2, 3, 1, 4))
        return std::sqrt((1.0 - l * l) * (1.0 - m * m * w2)) * std::sqrt(1.0 + w + w2) * (l - m) *
               (l - m * w);
    if (key(1, 4, 1, 4)) return (l - m) * (l - m * w) * (l - m * w2);
    if (key(2, 3, 4, 1) || key(4, 1, 2, 3))
        return std::sqrt((1.0 - l * l * w) * (1.0 - l * l * w2)) *
               std::sqrt((1.0 - m * m) * (1.0 - m * m * w)) * std::sqrt(1.0 + w + w2) * (m - l);
    if (key(2, 4, 4, 2) || key(4, 2, 2, 4))
        return std::sqrt((1.0 - l * l * w) * (1.0 - l * l * w2)) *
               std::sqrt((1.0 - m * m * w) * (1.0 - m * m * w2)) * (1.0 - m * l);
    if (key(2, 4, 3, 3) || key(3, 3, 2, 4))
        return std::sqrt((1.0 - l * l * w) * (1.0 - m * m * w2)) *
               std::sqrt((1.0 + w) * (1.0 + w + w2)) * (1.0 - l * m) * (l - m);
    if (key(2, 4, 2, 4)) return (1.0 + w + w2) * (1.0 - l * m) * (l - m) * (l - m * w);
    if (key(3, 2, 4, 1) || key(4, 1, 3, 2))
        return std::sqrt((1.0 - w2 * l * l) * (1.0 - m * m)) * std::sqrt(1.0 + w + w2) * (m - l) *
               (m - l * w);
    if (key(3, 3, 4, 2) || key(4, 2, 3, 3))
        return std::sqrt((1.0 - l * l * w2) * (1.0 - m * m * w)) *
               std::sqrt((1.0 + w) * (1.0 + w + w2)) * (1.0 - l * m) * (m - l);
    if (key(3, 3, 3, 3))
        return ((1.0 - l * l * w) * (1.0 - m * m * w2) - (1.0 + w + w2) * (m - l) * (m - l * w)) *
               (1.0 - l * m);
    if (key(3, 4, 4, 3) || key(4, 3, 3, 4))
        return std::sqrt((1.0 - l * l * w2) * (1.0 - m * m * w2)) * (1.0 - l * m) * (1.0 - l * m * w);
    if (key(3, 4, 3, 4)) return (1.0 + w + w2) * (1.0 - l * m) * (1.0 - l * m * w) * (l - m);
    if (key(4, 3, 4, 3)) return (1.0 + w + w2) * (1.0 - l * m) * (1.0 - l * m * w) * (m - l);
    if (key(4, 1, 4, 1)) return (m - l) * (m - l * w) * (m - l * w2);
    if (key(4, 2, 4, 2)) return (1.0 + w + w2) * (1.0 - l * m) * (m - l) * (m - l * w);
    return 0.0;
}

}  // namespace detail

/// Tabulated weight R(lam,mu)_{a,b}^{c,d}; zero for tuples absent from the
/// table (ice rule and table completeness coincide).
inline Cplx r_weight(const Spec& spec, Cplx lam, Cplx mu, int a, int b, int c, int d) {
    int N = spec.N;
    require(1 <= a && a <= N && 1 <= b && b <= N && 1 <= c && c <= N && 1 <= d && d <= N,
            "nonadd r_weight: index out of range");
    spec.check_domain(lam);
    spec.check_domain(mu);
    if (a + b != c + d) return 0.0;
    switch (N) {
        case 2: return detail::n2_weight(lam, mu, a, b, c, d);
        case 3: return detail::n3_weight(lam, mu, spec.omega, a, b, c, d);
        default: return detail::n4_weight(lam, mu, spec.omega, a, b, c, d);
    }
}

inline Matrix r_matrix(const Spec& spec, Cplx lam, Cplx mu) {
    int N = spec.N;
    Matrix R = Matrix::Zero(N * N, N * N);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            for (int c = 1; c <= N; ++c)
                for (int d = 1; d <= N; ++d)
                    if (a + b == c + d) R((a - 1) * N + (b - 1), (c - 1) * N + (d - 1)) =
                        r_weight(spec, lam, mu, a, b, c, d);
    return R;
}

/// General-N diagonal weight; for N <= 4 it reproduces the tabulated entries.
inline Cplx diag_weight_general(int N, Cplx omega, Cplx lam, Cplx mu, int a) {
    require(1 <= a && a <= N, "nonadd diag_weight: index out of range");
    Cplx out = 1.0;
    for (int i = 1; i <= a - 1; ++i) out *= mu - lam * std::pow(omega, i - 1);
    for (int i = a; i <= N - 1; ++i) out *= 1.0 - mu * lam * std::pow(omega, i - 1);
    return out;
}

inline Cplx diag_weight(const Spec& spec, Cplx lam, Cplx mu, int a) {
    return diag_weight_general(spec.N, spec.omega, lam, mu, a);
}

inline Cplx theta_general(Cplx omega, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    return -guarded_div(lam - mu * omega, lam * omega - mu, pole_tol, "nonadd theta");
}

inline Cplx theta(const Spec& spec, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    return theta_general(spec.omega, lam, mu, pole_tol);
}

/// General-N transfer eigenvalue; table-verified only up to N = 4.
inline Cplx lambda_eig_general(int N, Cplx omega, const Lattice& lat,
                               const std::vector<Cplx>& roots, Cplx lam, double pole_tol = 1e-8) {
    Cplx sum = 0.0;
    for (int a = 1; a <= N; ++a) {
        Cplx term = 1.0;
        for (Cplx mu : lat.inhomogeneities) term *= diag_weight_general(N, omega, lam, mu, a);
        for (Cplx lj : roots) {
            Cplx num = (1.0 - lam * lj) * (lam - lj * omega) * std::pow(omega, a - 2);
            Cplx den = (lam * std::pow(omega, a - 1) - lj) * (lam * std::pow(omega, a - 2) - lj);
            term *= guarded_div(num, den, pole_tol, "nonadd lambda_eig root product");
        }
        sum += term;
    }
    return sum;
}

inline Cplx lambda_eig(const Spec& spec, const Lattice& lat, const std::vector<Cplx>& roots,
                       Cplx lam, double pole_tol = 1e-8) {
    return lambda_eig_general(spec.N, spec.omega, lat, roots, lam, pole_tol);
}

/// Difference-form residuals of
/// prod_j (1 - l_l mu_j)/(mu_j - l_l) = prod_{j != l} (l_l - l_j w)/(l_l w - l_j).
inline std::vector<Cplx> bae_residual_general(Cplx omega, const Lattice& lat,
                                              const std::vector<Cplx>& roots,
                                              double pole_tol = 1e-8) {
    int n = int(roots.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(std::abs(roots[i] - roots[j]) > 1e-9, "nonadd bae_residual: coincident roots");
    std::vector<Cplx> res(n);
    for (int l = 0; l < n; ++l) {
        Cplx lhs = 1.0, rhs = 1.0;
        for (Cplx mu : lat.inhomogeneities)
            lhs *= guarded_div(1.0 - roots[l] * mu, mu - roots[l], pole_tol,
                               "nonadd bae site factor");
        for (int j = 0; j < n; ++j) {
            if (j == l) continue;
            rhs *= guarded_div(roots[l] - roots[j] * omega, roots[l] * omega - roots[j], pole_tol,
                               "nonadd bae root factor");
        }
        res[l] = lhs - rhs;
    }
    return res;
}

inline std::vector<Cplx> bae_residual(const Spec& spec, const Lattice& lat,
                                      const std::vector<Cplx>& roots, double pole_tol = 1e-8) {
    return bae_residual_general(spec.omega, lat, roots, pole_tol);
}

inline Cplx f1_closed_general(int N, Cplx omega, int a, Cplx lam, Cplx mu,
                              double pole_tol = 1e-8) {
    require(1 <= a && a <= N - 1, "nonadd f1_closed: a out of range");
    Cplx wa1 = std::pow(omega, a - 1);
    Cplx num = std::sqrt((1.0 - std::pow(omega, a)) * (1.0 - wa1 * lam * lam) * (1.0 - mu * mu));
    Cplx den = std::sqrt(1.0 - omega) * (mu - wa1 * lam);
    return guarded_div(num, den, pole_tol, "nonadd f1_closed denominator");
}

inline Cplx f_closed_general(int N, Cplx omega, int c, int b, int a, Cplx lam,
                             const std::vector<Cplx>& raps, double pole_tol = 1e-8) {
    require(b >= 1 && b <= N - 1, "nonadd f_closed: b out of range");
    require(a >= 1 && a <= N - b, "nonadd f_closed: a out of range");
    require(c == 0 || c == b, "nonadd f_closed: closed forms cover c in {0, b}");
    require(int(raps.size()) == b, "nonadd f_closed: need b rapidities");
    Cplx pairs = 1.0;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j)
            pairs *= guarded_div(1.0 - raps[i] * raps[j], omega * raps[i] - raps[j], pole_tol,
                                 "nonadd f_closed pair factor");
    Cplx ladder = 1.0, out;
    if (c == 0) {
        for (int i = 1; i <= b - 1; ++i)
            ladder *= std::sqrt((1.0 - std::pow(omega, a + b - 1 - i)) /
                                (1.0 - std::pow(omega, a + b - 1)) *
                                (1.0 - lam * lam * std::pow(omega, a + i - 2)) /
                                (1.0 - lam * lam * std::pow(omega, a + b - 2)));
        out = std::pow(omega, b * (b - 1) / 2.0) * pairs * ladder;
        for (Cplx li : raps) out *= f1_closed_general(N, omega, a + b - 1, lam, li, pole_tol);
    } else {
        for (int i = 1; i <= b - 1; ++i)
            ladder *= std::sqrt((1.0 - std::pow(omega, a + b - i)) / (1.0 - std::pow(omega, a)) *
                                (1.0 - lam * lam * std::pow(omega, a + i - 1)) /
                                (1.0 - lam * lam * std::pow(omega, a - 1)));
        out = pairs * ladder;
        for (Cplx li : raps) out *= -f1_closed_general(N, omega, a, lam, li, pole_tol);
    }
    return out;
}

inline Cplx f_closed(const Spec& spec, int c, int b, int a, Cplx lam,
                     const std::vector<Cplx>& raps, double pole_tol = 1e-8) {
    return f_closed_general(spec.N, spec.omega, c, b, a, lam, raps, pole_tol);
}

/// Solver seeds: scaled L-th roots of the homogeneous one-particle equation
/// (-1/lambda)^L = 1, pulled inside the unit disk.
inline std::vector<Cplx> momentum_seeds(int L) {
    std::vector<Cplx> out;
    for (int m = 0; m < L; ++m)
        for (double r : {0.5, 0.8})
            out.push_back(-r * std::exp(-2.0 * PI * I * double(m) / double(L)));
    return out;
}

inline WeightProvider provider(const Spec& spec) {
    Spec s = spec;
    return make_matrix_provider(
        "nonadd(N=" + std::to_string(spec.N) + ",omega=" + std::to_string(spec.omega_choice) + ")",
        spec.N, [s](Cplx lam, Cplx mu) { return r_matrix(s, lam, mu); },
        [s](Cplx lam, Cplx mu) { return theta(s, lam, mu); });
}

}  // namespace aba::nonadd
