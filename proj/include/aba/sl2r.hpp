#pragma once

// Non-compact SL(2,R) vertex model on the discrete D_s^- representation:
// sector-decomposed R-matrix blocks (tabulated up to charge 4), the spin
// chain Hamiltonian density, closed-form on-shell/off-shell data, the
// coordinate Bethe ansatz for one and two magnons, and the compact-model
// limit maps.

#include <map>

#include "aba/colored.hpp"
#include "aba/eig.hpp"
#include "aba/provider.hpp"
#include "aba/xxz.hpp"

namespace aba::sl2r {

inline constexpr int SECTOR_CAP = 4;

struct Spec {
    double s = -0.5;  // generalized spin, s < 0

    explicit Spec(double s_) : s(s_) {
        require(s < 0.0, "Sl2rSpec: s must be negative");
        for (int k = 1; k <= SECTOR_CAP + 1; ++k)
            require(std::abs(2.0 * s + 1.0 - k) > 1e-12, "Sl2rSpec: 2s+1-k vanishes");
    }
};

/// p_i(lam, mu) = prod_{j=1..i-1} [2s + 1 + i(mu - lam) - j]; empty product = 1.
inline Cplx p_func(const Spec& spec, int i, Cplx lam, Cplx mu) {
    require(i >= 1, "p_func: i must be >= 1");
    Cplx out = 1.0;
    for (int j = 1; j <= i - 1; ++j) out *= 2.0 * spec.s + 1.0 + I * (mu - lam) - double(j);
    return out;
}

/// Sector-n block M(a,c) = R(lam,mu)_{a,n+2-a}^{c,n+2-c}, a,c = 1..n+1.
inline Matrix sector_block(const Spec& spec, int n, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    require(0 <= n && n <= SECTOR_CAP, "sector_block: sector above tabulated cap");
    double s = spec.s;
    Cplx d = mu - lam;
    Cplx p = p_func(spec, n + 1, lam, mu);
    if (std::abs(p) < pole_tol) throw PoleError("sector_block: p_{n+1}(lam,mu) vanishes");
    Matrix M(n + 1, n + 1);
    switch (n) {
        case 0: M(0, 0) = 1.0; break;
        case 1: {
            M(0, 0) = M(1, 1) = I * d / p;
            M(0, 1) = M(1, 0) = 2.0 * s / p;
            break;
        }
        case 2: {
            Cplx c12 = 2.0 * std::sqrt(I * s) * std::sqrt(I * (2.0 * s - 1.0)) * d / p;
            M(0, 0) = M(2, 2) = -d * (I + d) / p;
            M(0, 1) = M(1, 0) = M(1, 2) = M(2, 1) = c12;
            M(0, 2) = M(2, 0) = 2.0 * s * (2.0 * s - 1.0) / p;
            M(1, 1) = (2.0 * s * (2.0 * s - 1.0) - d * (-I + d)) / p;
            break;
        }
        case 3: {
            M(0, 0) = M(3, 3) = (2.0 - I * mu + I * lam) * d * (I + d) / p;
            Cplx c12 = 2.0 * I * std::sqrt(3.0) * std::sqrt(I * (s - 1.0)) * std::sqrt(I * s) * d *
                       (I + d) / p;
            M(0, 1) = M(1, 0) = M(2, 3) = M(3, 2) = c12;
            Cplx c13 = 2.0 * std::sqrt(3.0) * std::sqrt(I * (s - 1.0)) * std::sqrt(I * s) *
                       (2.0 * s - 1.0) * d / p;
            M(0, 2) = M(2, 0) = M(1, 3) = M(3, 1) = c13;
            M(0, 3) = M(3, 0) = 4.0 * (s - 1.0) * s * (2.0 * s - 1.0) / p;
            M(1, 1) = M(2, 2) = -I * d * (-8.0 * (s - 1.0) * s + d * (-I + d)) / p;
            M(1, 2) = M(2, 1) =
                2.0 * (2.0 * s - 1.0) * (2.0 * (s - 1.0) * s - d * (-I + d)) / p;
            break;
        }
        default: {  // n = 4
            M(0, 0) = M(4, 4) = d * (I + d) * (2.0 * I + d) * (3.0 * I + d) / p;
            Cplx c12 = -2.0 * std::sqrt(2.0) * std::sqrt(I * s) * std::sqrt(I * (2.0 * s - 3.0)) *
                       d * (I + d) * (2.0 * I + d) / p;
            M(0, 1) = M(1, 0) = M(3, 4) = M(4, 3) = c12;
            Cplx c13 = 2.0 * std::sqrt(6.0) * std::sqrt(I * (s - 1.0)) * std::sqrt(I * s) *
                       std::sqrt(I * (2.0 * s - 3.0)) * std::sqrt(I * (2.0 * s - 1.0)) * d *
                       (I + d) / p;
            M(0, 2) = M(2, 0) = M(2, 4) = M(4, 2) = c13;
            Cplx c14 = 4.0 * std::sqrt(2.0) * (s - 1.0) * std::sqrt(I * s) *
                       std::sqrt(I * (2.0 * s - 3.0)) * (2.0 * s - 1.0) * d / p;
            M(0, 3) = M(1, 4) = M(3, 0) = M(4, 1) = c14;
            M(0, 4) = M(4, 0) = 4.0 * (s - 1.0) * s * (2.0 * s - 3.0) * (2.0 * s - 1.0) / p;
            M(1, 1) = M(3, 3) =
                d * (I + d) * (6.0 * (3.0 - 2.0 * s) * s + d * (-I + d)) / p;
            Cplx c23 = 2.0 * std::sqrt(3.0) * std::sqrt(I * (s - 1.0)) *
                       std::sqrt(I * (2.0 * s - 1.0)) * d *
                       (2.0 * (2.0 * s - 3.0) * s - d * (-I + d)) / p;
            M(1, 2) = M(2, 1) = M(2, 3) = M(3, 2) = c23;
            M(1, 3) = M(3, 1) = 2.0 * (s - 1.0) * (2.0 * s - 1.0) *
                                (2.0 * (2.0 * s - 3.0) * s - 3.0 * d * (-I + d)) / p;
            M(2, 2) = (4.0 * (s - 1.0) * s * (2.0 * s - 3.0) * (2.0 * s - 1.0) +
                       2.0 * I * (3.0 + 4.0 * s * (2.0 * s - 3.0)) * d -
                       (7.0 + 8.0 * s * (2.0 * s - 3.0)) * d * d - 2.0 * I * d * d * d +
                       d * d * d * d) / p;
            break;
        }
    }
    return M;
}

/// Tabulated amplitude R(lam,mu)_{a,b}^{c,d}; throws beyond sector 4.
inline Cplx r_weight(const Spec& spec, Cplx lam, Cplx mu, int a, int b, int c, int d) {
    require(a >= 1 && b >= 1 && c >= 1 && d >= 1, "sl2r r_weight: occupation indices are 1-based");
    if (a + b != c + d) return 0.0;
    int n = a + b - 2;
    if (n > SECTOR_CAP)
        throw UnsupportedSectorError("sl2r r_weight: sector " + std::to_string(n) +
                                     " beyond tabulated cap 4");
    return sector_block(spec, n, lam, mu)(a - 1, c - 1);
}

// -- Spin-chain Hamiltonian ------------------------------------------------

inline double h1(const Spec& spec, int k) {
    require(k >= 1, "h1: k must be >= 1");
    return 2.0 * spec.s / (2.0 * spec.s + 1.0 - k);
}

inline double h2(const Spec& spec, int k, int m1, int m2) {
    require(k >= 1 && m1 >= 0 && m2 >= 0, "h2: bad arguments");
    double s = spec.s, out = 2.0 * s / k;
    for (int i = 1; i <= k; ++i)
        out *= std::sqrt((m1 + i) / (m1 + i - 2.0 * s - 1.0) * (m2 + 1.0 - i) / (m2 - 2.0 * s - i));
    return out;
}

/// Action of the density H_{1,2}(s) on |m1, m2>, as a coefficient map.
inline std::map<std::pair<int, int>, double> hamiltonian_action(const Spec& spec, int m1, int m2) {
    require(m1 >= 0 && m2 >= 0, "hamiltonian_action: occupations must be >= 0");
    std::map<std::pair<int, int>, double> out;
    double diag = 0.0;
    for (int k = 1; k <= m1; ++k) diag += h1(spec, k);
    for (int k = 1; k <= m2; ++k) diag += h1(spec, k);
    if (diag != 0.0 || (m1 == 0 && m2 == 0)) out[{m1, m2}] = diag;
    for (int k = 1; k <= m1; ++k) out[{m1 - k, m2 + k}] += h2(spec, k, m2, m1);
    for (int k = 1; k <= m2; ++k) out[{m1 + k, m2 - k}] += h2(spec, k, m1, m2);
    return out;
}

/// Dense periodic-chain Hamiltonian on the charge-n subspace of L sites.
inline Matrix build_hamiltonian(const Spec& spec, int L, int n, int cap = 3) {
    require(L >= 2, "build_hamiltonian: L must be >= 2");
    require(n <= cap, "build_hamiltonian: sector above configured cap");
    ChargeBasis basis(L, n, n);
    Matrix H = Matrix::Zero(basis.dim(), basis.dim());
    for (int col = 0; col < basis.dim(); ++col) {
        const std::vector<int>& st = basis.states[col];
        for (int bond = 0; bond < L; ++bond) {
            int i = bond, j = (bond + 1) % L;
            if (L == 2 && bond == 1) { i = 1; j = 0; }  // explicit H_{L,1} closure
            auto action = hamiltonian_action(spec, st[i], st[j]);
            for (const auto& [target, coeff] : action) {
                std::vector<int> ns = st;
                ns[i] = target.first;
                ns[j] = target.second;
                H(basis.index.at(ns), col) += coeff;
            }
        }
    }
    return H;
}

/// Sector-n density from the logarithmic derivative of the R-matrix block at
/// lam = 0, Richardson-extrapolated central differences, normalized so that
/// the vacuum entry is 0 and the |0,1> -> |0,1> entry is 1.
inline Matrix hamiltonian_from_r(const Spec& spec, int n, double step = 1e-5) {
    require(0 <= n && n <= SECTOR_CAP, "hamiltonian_from_r: sector above tabulated cap");
    auto raw = [&](int sector) {
        auto deriv = [&](double h) {
            Matrix plus = sector_block(spec, sector, Cplx(h, 0.0), 0.0);
            Matrix minus = sector_block(spec, sector, Cplx(-h, 0.0), 0.0);
            return Matrix((plus - minus) / (2.0 * h));
        };
        Matrix d = (4.0 * deriv(step / 2.0) - deriv(step)) / 3.0;
        Matrix b0 = sector_block(spec, sector, 0.0, 0.0);
        return Matrix(b0.inverse() * d);
    };
    Cplx alpha = raw(0)(0, 0);
    Matrix r1 = raw(1);
    Cplx sigma = r1(0, 0) - alpha;
    require(std::abs(sigma) > 1e-12, "hamiltonian_from_r: degenerate normalization");
    Matrix rn = raw(n);
    return (rn - alpha * eye(n + 1)) / sigma;
}

// -- On-shell / off-shell closed forms --------------------------------------

struct LambdaResult {
    Cplx value;
    double tail_estimate;
};

/// Partial sum over a = 1..cutoff of the eigenvalue series, with the modulus
/// of the last term as a tail estimate.
inline LambdaResult lambda_eig(const Spec& spec, const Lattice& lat, const std::vector<Cplx>& roots,
                               Cplx lam, int cutoff, double pole_tol = 1e-8) {
    require(cutoff >= 1, "lambda_eig: cutoff must be >= 1");
    double s = spec.s;
    Cplx sum = 0.0;
    double tail = 0.0;
    for (int a = 1; a <= cutoff; ++a) {
        Cplx term = 1.0;
        for (Cplx mu : lat.inhomogeneities)
            for (int k = 1; k <= a - 1; ++k)
                term *= guarded_div(lam - mu - double(k - 1) * I,
                                    lam - mu + (2.0 * s + 1.0 - k) * I, pole_tol,
                                    "sl2r lambda_eig site product");
        for (Cplx lj : roots) {
            Cplx d = lam - lj;
            term *= guarded_div((d - 2.0 * s * I) * (d + I),
                                (d - double(a - 1) * I) * (d - double(a - 2) * I), pole_tol,
                                "sl2r lambda_eig root product");
        }
        sum += term;
        tail = std::abs(term);
    }
    return {sum, tail};
}

/// Difference-form residuals of
/// prod_l (l_j - mu_l + 2si)/(l_j - mu_l) = prod_{i != j} (l_j - l_i + i)/(l_j - l_i - i).
inline std::vector<Cplx> bae_residual(const Spec& spec, const Lattice& lat,
                                      const std::vector<Cplx>& roots, double pole_tol = 1e-8) {
    int n = int(roots.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(std::abs(roots[i] - roots[j]) > 1e-9, "sl2r bae_residual: coincident roots");
    std::vector<Cplx> res(n);
    for (int j = 0; j < n; ++j) {
        Cplx lhs = 1.0, rhs = 1.0;
        for (Cplx mu : lat.inhomogeneities)
            lhs *= guarded_div(roots[j] - mu + 2.0 * spec.s * I, roots[j] - mu, pole_tol,
                               "sl2r bae site factor");
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            rhs *= guarded_div(roots[j] - roots[i] + I, roots[j] - roots[i] - I, pole_tol,
                               "sl2r bae root factor");
        }
        res[j] = lhs - rhs;
    }
    return res;
}

inline Cplx f1_closed(const Spec& spec, int a, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    require(a >= 1, "sl2r f1_closed: a must be >= 1");
    double s = spec.s;
    Cplx num = -I * std::sqrt(Cplx(2.0 * s * a * (2.0 * s + 1.0 - a)));
    return guarded_div(num, mu - lam + double(a - 1) * I, pole_tol, "sl2r f1_closed denominator");
}

inline Cplx f_closed(const Spec& spec, int c, int b, int a, Cplx lam,
                     const std::vector<Cplx>& raps, double pole_tol = 1e-8) {
    require(b >= 1 && a >= 1, "sl2r f_closed: a, b must be >= 1");
    require(c == 0 || c == b, "sl2r f_closed: closed forms cover c in {0, b}");
    require(int(raps.size()) == b, "sl2r f_closed: need b rapidities");
    double s = spec.s;
    Cplx pairs = 1.0;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j)
            pairs *= guarded_div(raps[i] - raps[j] - 2.0 * s * I, raps[i] - raps[j] - I, pole_tol,
                                 "sl2r f_closed pair factor");
    Cplx ladder = 1.0, out;
    if (c == 0) {
        for (int k = 1; k <= b - 1; ++k)
            ladder *= std::sqrt(Cplx((2.0 * s + 2.0 - a - k) * (a + b - 1.0 - k) /
                                     ((2.0 * s + 2.0 - a - b) * (a + b - 1.0))));
        out = ladder * pairs;
        for (Cplx li : raps) out *= f1_closed(spec, a + b - 1, lam, li, pole_tol);
    } else {
        for (int k = 1; k <= b - 1; ++k)
            ladder *= std::sqrt(Cplx((2.0 * s + 1.0 - a - k) * (a + b - double(k)) /
                                     ((2.0 * s + 1.0 - a) * a)));
        out = ladder * pairs;
        for (Cplx li : raps) out *= -f1_closed(spec, a, lam, li, pole_tol);
    }
    return out;
}

inline Cplx theta(const Spec& spec, Cplx lam, Cplx mu, double pole_tol = 1e-8) {
    Cplx d = lam - mu;
    double s = spec.s;
    Cplx out = guarded_div(d - 2.0 * s * I, d + 2.0 * s * I, pole_tol, "sl2r theta");
    out *= guarded_div(d + I, d - I, pole_tol, "sl2r theta");
    return out;
}

inline Cplx diag_weight(const Spec& spec, Cplx lam, Cplx mu, int a, double pole_tol = 1e-8) {
    require(a >= 1, "sl2r diag_weight: a must be >= 1");
    Cplx out = 1.0;
    for (int k = 1; k <= a - 1; ++k)
        out *= guarded_div(lam - mu - double(k - 1) * I, lam - mu + (2.0 * spec.s + 1.0 - k) * I,
                           pole_tol, "sl2r diag_weight denominator");
    return out;
}

// -- Coordinate Bethe ansatz (one and two magnons) ---------------------------

inline double energy1(double k) { return 2.0 * (1.0 - std::cos(k)); }
inline Cplx energy1(Cplx k) { return 2.0 * (1.0 - std::cos(k)); }

inline Cplx s_matrix(const Spec& spec, Cplx k1, Cplx k2, double pole_tol = 1e-10) {
    double s = spec.s;
    Cplx e1 = std::exp(I * k1), e2 = std::exp(I * k2), e12 = std::exp(I * (k1 + k2));
    Cplx num = 1.0 + e12 + (2.0 * s - 1.0) * e1 - (2.0 * s + 1.0) * e2;
    Cplx den = 1.0 + e12 + (2.0 * s - 1.0) * e2 - (2.0 * s + 1.0) * e1;
    return -guarded_div(num, den, pole_tol, "s_matrix denominator");
}

/// exp(i k) = (lam + 2si)/lam.
inline Cplx momentum_from_rapidity(const Spec& spec, Cplx lam, double pole_tol = 1e-10) {
    Cplx ratio = guarded_div(lam + 2.0 * spec.s * I, lam, pole_tol, "momentum map");
    return -I * std::log(ratio);
}

inline Cplx rapidity_from_momentum(const Spec& spec, Cplx k, double pole_tol = 1e-10) {
    return guarded_div(2.0 * spec.s * I, std::exp(I * k) - 1.0, pole_tol, "rapidity map");
}

struct TwoParticleSolution {
    Cplx k1, k2;
    double e2 = 0.0;                 // E_2 = 2(1-cos k1) + 2(1-cos k2)
    double quantization_residual = 0.0;
    bool descendant = false;         // k1 = k2 = 0 zero-mode (constant wave function)
};

/// c(s), d(s), e(s) of the two-excitation action list.
inline double c_param(const Spec& spec) { return 2.0 + 1.0 / (2.0 * spec.s - 1.0); }
inline double d_param(const Spec& spec) {
    return -2.0 * std::sqrt(-spec.s) / std::sqrt(1.0 - 2.0 * spec.s);
}
inline double e_param(const Spec& spec) { return 1.0 / (2.0 * spec.s - 1.0); }

/// Two-magnon wave function on the charge-2 basis of L sites: plane-wave
/// phi on x1 < x2 pairs plus the matching-condition amplitude on doubly
/// occupied sites, phi2(x) = -phi(x,x)/d(s).
inline Vector two_particle_state(const Spec& spec, int L, const TwoParticleSolution& sol,
                                 const ChargeBasis& basis) {
    Vector psi = Vector::Zero(basis.dim());
    auto phi = [&](int x1, int x2) -> Cplx {
        if (sol.descendant) return 1.0;
        return std::exp(I * (sol.k1 * double(x1) + sol.k2 * double(x2))) +
               s_matrix(spec, sol.k1, sol.k2) *
                   std::exp(I * (sol.k2 * double(x1) + sol.k1 * double(x2)));
    };
    for (int idx = 0; idx < basis.dim(); ++idx) {
        const std::vector<int>& st = basis.states[idx];
        std::vector<int> occupied;
        for (int x = 0; x < L; ++x)
            for (int r = 0; r < st[x]; ++r) occupied.push_back(x + 1);
        if (occupied.size() != 2) continue;
        if (occupied[0] == occupied[1])
            psi(idx) = -phi(occupied[0], occupied[0]) / d_param(spec);
        else
            psi(idx) = phi(occupied[0], occupied[1]);
    }
    return psi;
}

/// Solves exp(i k_i L) S(k_i, k_j) = 1 by damped Newton from free-momentum,
/// bound-state and random seeds; duplicate and k1 = k2 candidates are
/// discarded, and the k1 = k2 = 0 zero mode is appended explicitly.
inline std::vector<TwoParticleSolution> cba_two_particle(const Spec& spec, int L,
                                                         std::uint64_t seed = 11,
                                                         int max_iter = 200) {
    require(L >= 3, "cba_two_particle: L must be >= 3");
    auto F = [&](Cplx k1, Cplx k2, Cplx& f1, Cplx& f2) {
        f1 = std::exp(I * k1 * double(L)) * s_matrix(spec, k1, k2) - 1.0;
        f2 = std::exp(I * k2 * double(L)) * s_matrix(spec, k2, k1) - 1.0;
    };
    std::vector<std::pair<Cplx, Cplx>> seeds;
    for (int m1 = 0; m1 < L; ++m1)
        for (int m2 = m1; m2 < L; ++m2) {
            double k1 = 2.0 * PI * m1 / L, k2 = 2.0 * PI * m2 / L;
            seeds.push_back({k1 + 0.05, k2 - 0.05});
            seeds.push_back({k1 + 0.21, k2 + 0.13});
        }
    for (int m = 0; m < 2 * L; ++m)
        for (double v : {0.2, 0.45, 0.8, 1.3, 2.0, 3.0}) {
            double half = PI * m / L;
            seeds.push_back({Cplx(half, v), Cplx(half, -v)});
        }
    Rng rng(seed);
    for (int t = 0; t < 40; ++t)
        seeds.push_back({rng.complex_in_box(0, 2 * PI, -2.5, 2.5),
                         rng.complex_in_box(0, 2 * PI, -2.5, 2.5)});

    std::vector<TwoParticleSolution> out;
    auto wrap = [&](Cplx k) {  // momenta live mod 2 pi
        double re = std::fmod(k.real(), 2.0 * PI);
        if (re < -1e-9) re += 2.0 * PI;
        return Cplx(re, k.imag());
    };
    for (auto [k1, k2] : seeds) {
        bool ok = false;
        for (int it = 0; it < max_iter; ++it) {
            Cplx f1, f2;
            try {
                F(k1, k2, f1, f2);
            } catch (const PoleError&) {
                break;
            }
            double res = std::max(std::abs(f1), std::abs(f2));
            if (res < 1e-11) {
                ok = true;
                break;
            }
            double h = 1e-7;
            Cplx f1a, f2a, f1b, f2b;
            try {
                F(k1 + h, k2, f1a, f2a);
                F(k1, k2 + h, f1b, f2b);
            } catch (const PoleError&) {
                break;
            }
            Cplx j11 = (f1a - f1) / h, j12 = (f1b - f1) / h;
            Cplx j21 = (f2a - f2) / h, j22 = (f2b - f2) / h;
            Cplx det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-14) break;
            Cplx dk1 = (f1 * j22 - f2 * j12) / det;
            Cplx dk2 = (j11 * f2 - j21 * f1) / det;
            double damp = (it < 8) ? 0.5 : 1.0;
            k1 -= damp * dk1;
            k2 -= damp * dk2;
            if (!finite(k1) || !finite(k2)) break;
        }
        if (!ok) continue;
        k1 = wrap(k1);
        k2 = wrap(k2);
        if (std::abs(std::exp(I * k1) - std::exp(I * k2)) < 1e-7) continue;  // phi vanishes
        if (std::real(k1) > std::real(k2) + 1e-12 ||
            (std::abs(std::real(k1) - std::real(k2)) < 1e-12 && std::imag(k1) > std::imag(k2)))
            std::swap(k1, k2);
        bool dup = false;
        for (const auto& sol : out)
            if (std::abs(std::exp(I * sol.k1) - std::exp(I * k1)) < 1e-6 &&
                std::abs(std::exp(I * sol.k2) - std::exp(I * k2)) < 1e-6)
                dup = true;
        if (dup) continue;
        TwoParticleSolution sol;
        sol.k1 = k1;
        sol.k2 = k2;
        sol.e2 = std::real(energy1(k1) + energy1(k2));
        Cplx f1, f2;
        F(k1, k2, f1, f2);
        sol.quantization_residual = std::max(std::abs(f1), std::abs(f2));
        out.push_back(sol);
    }
    TwoParticleSolution zero;
    zero.k1 = zero.k2 = 0.0;
    zero.e2 = 0.0;
    zero.descendant = true;
    out.push_back(zero);
    return out;
}

// -- Compact-model limit maps ------------------------------------------------

struct LimitMap {
    colored::Spec colored_spec;
    Cplx rescale;  // multiply every spectral variable by this before evaluation
};

/// Colored route: gamma_bar = -2 s i pi k / N, spectral rescale -pi k / N.
inline LimitMap limit_map(const Spec& spec, int N, int k) {
    require(std::gcd(k, N) == 1, "limit_map: N and k must be coprime");
    Cplx gb = -2.0 * spec.s * I * PI * double(k) / double(N);
    return {colored::Spec(N, k, gb), Cplx(-PI * double(k) / double(N), 0.0)};
}

/// XXZ route for s = -1/2: gamma = 2 pi / N, spectral rescale 2 pi / N.
/// Formula-level only (q is a root of unity there), so the N cap is lifted.
inline std::pair<xxz::Spec, Cplx> limit_map_xxz(int N) {
    double g = 2.0 * PI / double(N);
    return {xxz::Spec(N, g, /*cap=*/N), Cplx(g, 0.0)};
}

/// One-particle solver seeds: rapidities of the free momenta 2 pi m / L
/// (m = 0 maps to an infinite rapidity and is skipped).
inline std::vector<Cplx> momentum_seeds(const Spec& spec, int L) {
    std::vector<Cplx> out;
    for (int m = 1; m < L; ++m)
        out.push_back(rapidity_from_momentum(spec, Cplx(2.0 * PI * m / L, 0.0)));
    return out;
}

inline WeightProvider provider(const Spec& spec) {
    Spec s = spec;
    WeightProvider p;
    p.name = "sl2r(s=" + std::to_string(spec.s) + ")";
    p.local_dim = 0;
    p.sector_cap = SECTOR_CAP;
    p.weight = [s](Cplx lam, Cplx mu, int a, int b, int c, int d) {
        return r_weight(s, lam, mu, a, b, c, d);
    };
    p.closed_theta = [s](Cplx lam, Cplx mu) { return theta(s, lam, mu); };
    return p;
}

}  // namespace aba::sl2r
