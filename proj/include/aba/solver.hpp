#pragma once

// Numerical Bethe-root finder: damped Newton on the log-form generic Bethe
// equations, multi-seeded (caller-supplied momentum seeds plus random
// complex seeds), with duplicate and coincident-root filtering.

#include "aba/engine.hpp"

namespace aba {

struct BetheRoots {
    std::vector<Cplx> roots;
    std::vector<double> residuals;  // |log-form residual| per root
    bool converged = false;
};

struct SolveOptions {
    int random_seeds_per_target = 20;
    int max_iter = 200;
    double damping = 0.5;
    double target_residual = 1e-9;
    double dedup_tol = 1e-6;
    double min_root_distance = 1e-9;  // hard invariant during iteration
    double coincident_tol = 1e-5;     // converged sets closer than this are pseudo-solutions
    double seed_box = 1.5;            // random seeds drawn from this complex box
    std::uint64_t rng_seed = 1;
    int max_solutions = 64;
};

namespace detail {

inline bool newton_polish(const WeightProvider& p, const Lattice& lat, std::vector<Cplx>& roots,
                          const SolveOptions& opt, double& out_res) {
    int n = int(roots.size());
    auto residual = [&](const std::vector<Cplx>& r, std::vector<Cplx>& out) -> bool {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(r[i] - r[j]) < opt.min_root_distance) return false;
        try {
            out = engine::bae_generic(p, lat, r);
        } catch (const std::exception&) {
            return false;
        }
        for (Cplx v : out)
            if (!finite(v)) return false;
        return true;
    };
    std::vector<Cplx> g;
    for (int it = 0; it < opt.max_iter; ++it) {
        if (!residual(roots, g)) return false;
        double worst = 0.0;
        for (Cplx v : g) worst = std::max(worst, std::abs(v));
        if (worst < opt.target_residual) {
            out_res = worst;
            return true;
        }
        Matrix J(n, n);
        double h = 1e-7;
        for (int k = 0; k < n; ++k) {
            std::vector<Cplx> shifted = roots;
            shifted[k] += h;
            std::vector<Cplx> gs;
            if (!residual(shifted, gs)) return false;
            for (int r = 0; r < n; ++r) J(r, k) = (gs[r] - g[r]) / h;
        }
        Vector rhs(n);
        for (int r = 0; r < n; ++r) rhs(r) = g[r];
        Vector step = J.fullPivLu().solve(rhs);
        if (!step.allFinite()) return false;
        double damp = (it < 10) ? opt.damping : 1.0;
        for (int k = 0; k < n; ++k) roots[k] -= damp * step(k);
        for (Cplx r : roots)
            if (!finite(r)) return false;
    }
    return false;
}

inline bool same_multiset(const std::vector<Cplx>& a, const std::vector<Cplx>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<char> used(b.size(), 0);
    for (Cplx x : a) {
        bool found = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(x - b[j]) < tol) {
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace detail

/// Finds distinct converged n-root solutions of the generic Bethe equations.
/// `momentum_seeds` lets model layers inject one-particle seeds (the solver
/// combines them into n-tuples); random seeds cover the rest. Returns an
/// empty set (converged = false entries absent) when nothing converges.
inline std::vector<BetheRoots> solve_bae(const WeightProvider& p, const Lattice& lat, int n,
                                         const std::vector<Cplx>& momentum_seeds = {},
                                         const SolveOptions& opt = {}) {
    require(n >= 1, "solve_bae: n must be >= 1");
    std::vector<std::vector<Cplx>> seeds;
    // n-tuples out of the supplied one-particle seeds
    std::function<void(std::vector<Cplx>&, size_t)> combine = [&](std::vector<Cplx>& cur,
                                                                  size_t lo) {
        if (int(cur.size()) == n) {
            seeds.push_back(cur);
            return;
        }
        for (size_t i = lo; i < momentum_seeds.size(); ++i) {
            cur.push_back(momentum_seeds[i]);
            combine(cur, i + 1);
            cur.pop_back();
        }
    };
    std::vector<Cplx> cur;
    combine(cur, 0);
    Rng rng(opt.rng_seed);
    int random_sets = opt.random_seeds_per_target * std::max(4, n * 2);
    for (int t = 0; t < random_sets; ++t) {
        std::vector<Cplx> s(n);
        for (int k = 0; k < n; ++k)
            s[k] = rng.complex_in_box(-opt.seed_box, opt.seed_box, -opt.seed_box, opt.seed_box);
        seeds.push_back(std::move(s));
    }

    std::vector<BetheRoots> out;
    for (auto seed : seeds) {
        double res = 0.0;
        if (!detail::newton_polish(p, lat, seed, opt, res)) continue;
        for (Cplx& r : seed) r = p.fold(r);  // collapse periodic aliases
        bool coincident = false;
        for (size_t i = 0; i < seed.size(); ++i)
            for (size_t j = i + 1; j < seed.size(); ++j)
                if (std::abs(seed[i] - seed[j]) < opt.coincident_tol) coincident = true;
        if (coincident) continue;
        bool dup = false;
        for (const auto& sol : out)
            if (detail::same_multiset(sol.roots, seed, opt.dedup_tol)) dup = true;
        if (dup) continue;
        BetheRoots br;
        br.roots = seed;
        std::sort(br.roots.begin(), br.roots.end(), [](Cplx a, Cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        std::vector<Cplx> g = engine::bae_generic(p, lat, br.roots);
        for (Cplx v : g) br.residuals.push_back(std::abs(v));
        br.converged = true;
        out.push_back(std::move(br));
        if (int(out.size()) >= opt.max_solutions) break;
    }
    return out;
}

}  // namespace aba
