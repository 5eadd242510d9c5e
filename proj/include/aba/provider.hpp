#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

#include "aba/linalg.hpp"

namespace aba {

/// Boltzmann-weight evaluator for one vertex model. Indices are 1-based and
/// the ice rule R_{a,b}^{c,d} = 0 unless a+b = c+d is a structural guarantee
/// of every implementation (audited at wrap time).
///
/// Compact families set local_dim = N and sector_cap = 0. The non-compact
/// family sets local_dim = 0 and sector_cap to the largest tabulated vertex
/// sector a+b-2; requesting weights beyond it throws UnsupportedSectorError.
struct WeightProvider {
    std::string name;
    int local_dim = 0;
    int sector_cap = 0;
    std::function<Cplx(Cplx, Cplx, int, int, int, int)> weight;
    std::function<Cplx(Cplx, Cplx)> closed_theta;  // model closed form; required for local_dim == 2
    double rapidity_period_im = 0.0;  // weights invariant under lam -> lam + i*period (0 = none)

    bool compact() const { return local_dim > 0; }

    /// Folds a rapidity into the fundamental strip when the model is
    /// periodic in the imaginary direction (the sinh-based families).
    Cplx fold(Cplx z) const {
        if (rapidity_period_im == 0.0) return z;
        double k = std::round(z.imag() / rapidity_period_im);
        return z - Cplx(0.0, k * rapidity_period_im);
    }

    Cplx w(Cplx lam, Cplx mu, int a, int b, int c, int d) const {
        if (a + b != c + d) return 0.0;
        return weight(lam, mu, a, b, c, d);
    }
};

/// Randomized ice-rule audit over off-shell index tuples; returns the largest
/// |weight| found where the ice rule demands an exact zero.
inline double audit_ice(const WeightProvider& p, int dim, std::uint64_t seed, int samples = 50,
                        double box = 0.5) {
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Cplx lam = rng.complex_in_box(-box, box, -box, box);
        Cplx mu = rng.complex_in_box(-box, box, -box, box);
        for (int a = 1; a <= dim; ++a)
            for (int b = 1; b <= dim; ++b)
                for (int c = 1; c <= dim; ++c)
                    for (int d = 1; d <= dim; ++d) {
                        if (a + b == c + d) continue;
                        if (p.compact() ? false : (a + b - 2 > p.sector_cap)) continue;
                        worst = std::max(worst, std::abs(p.weight(lam, mu, a, b, c, d)));
                    }
    }
    return worst;
}

/// Wraps a full-matrix builder R(lam, mu) -> N^2 x N^2 into a per-entry
/// weight provider with a small keyed cache, so repeated weight lookups at
/// the same spectral points do not rebuild the matrix. The cache is guarded
/// by a mutex; providers stay safe to share across threads.
inline WeightProvider make_matrix_provider(std::string name, int N,
                                           std::function<Matrix(Cplx, Cplx)> build,
                                           std::function<Cplx(Cplx, Cplx)> closed_theta) {
    struct Cache {
        std::mutex m;
        std::map<std::array<double, 4>, Matrix> entries;
    };
    auto cache = std::make_shared<Cache>();
    WeightProvider p;
    p.name = std::move(name);
    p.local_dim = N;
    p.closed_theta = std::move(closed_theta);
    p.weight = [N, build = std::move(build), cache](Cplx lam, Cplx mu, int a, int b, int c,
                                                    int d) -> Cplx {
        require(1 <= a && a <= N && 1 <= b && b <= N && 1 <= c && c <= N && 1 <= d && d <= N,
                "weight: index out of range");
        std::array<double, 4> key{lam.real(), lam.imag(), mu.real(), mu.imag()};
        std::lock_guard<std::mutex> lock(cache->m);
        auto it = cache->entries.find(key);
        if (it == cache->entries.end()) {
            if (cache->entries.size() > 512) cache->entries.clear();
            it = cache->entries.emplace(key, build(lam, mu)).first;
        }
        return it->second((a - 1) * N + (b - 1), (c - 1) * N + (d - 1));
    };
    return p;
}

/// Inhomogeneous row of L sites.
struct Lattice {
    int L = 0;
    std::vector<Cplx> inhomogeneities;

    Lattice() = default;
    Lattice(int sites, std::vector<Cplx> mus) : L(sites), inhomogeneities(std::move(mus)) {
        require(L >= 1, "Lattice: L must be >= 1");
        require(int(inhomogeneities.size()) == L, "Lattice: need one inhomogeneity per site");
        for (Cplx m : inhomogeneities) require(finite(m), "Lattice: inhomogeneities must be finite");
    }

    static Lattice homogeneous(int sites) { return Lattice(sites, std::vector<Cplx>(sites, 0.0)); }
};

/// Occupation basis of the charge-n subspace of an L-site chain: all tuples
/// (m_1..m_L) with sum = n and 0 <= m_i <= max_local. States are enumerated
/// in lexicographic order, which fixes every dense block deterministically.
struct ChargeBasis {
    int L = 0;
    int charge = 0;
    std::vector<std::vector<int>> states;
    std::map<std::vector<int>, int> index;

    ChargeBasis() = default;
    ChargeBasis(int sites, int n, int max_local) : L(sites), charge(n) {
        std::vector<int> cur(sites, 0);
        build(cur, 0, n, max_local);
        for (int i = 0; i < int(states.size()); ++i) index[states[i]] = i;
    }

    int dim() const { return int(states.size()); }

  private:
    void build(std::vector<int>& cur, int site, int remaining, int max_local) {
        if (site == L) {
            if (remaining == 0) states.push_back(cur);
            return;
        }
        for (int m = 0; m <= std::min(remaining, max_local); ++m) {
            cur[site] = m;
            build(cur, site + 1, remaining - m, max_local);
        }
        cur[site] = 0;
    }
};

}  // namespace aba
