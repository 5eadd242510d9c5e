#pragma once

// Uniform identity-checking harness: ice rule, Yang-Baxter (three-parameter
// form, which covers the additive case), unitarity, braid relations,
// regularity and transfer commutativity. Every check is deterministic given
// its seed; samples are distributed across threads and reduced by max.

#include <thread>

#include "aba/engine.hpp"
#include "aba/sl2r.hpp"

namespace aba::verify {

struct CheckReport {
    std::string check_name;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::uint64_t seed = 0;
    std::string worst_case_inputs;

    void finalize() { passed = max_residual <= tolerance; }
};

struct SampleDomain {
    double re_lo = -0.6, re_hi = 0.6, im_lo = -0.5, im_hi = 0.5;
    bool real_only = false;  // non-additive tables live on (-0.9, 0.9)

    Cplx draw(Rng& rng) const {
        if (real_only) return Cplx(rng.uniform(re_lo, re_hi), 0.0);
        return rng.complex_in_box(re_lo, re_hi, im_lo, im_hi);
    }

    static SampleDomain real_interval(double hi = 0.9) { return {-hi, hi, 0, 0, true}; }
};

namespace detail {

/// Runs `fn(sample_index, rng)` over samples on a thread pool, reducing the
/// returned (residual, description) pairs by max residual.
template <typename Fn>
inline void parallel_max(int samples, std::uint64_t seed, CheckReport& rep, Fn&& fn) {
    int workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    if (samples < 4) workers = 1;
    std::vector<double> worst(workers, 0.0);
    std::vector<std::string> what(workers);
    auto body = [&](int w) {
        for (int i = w; i < samples; i += workers) {
            Rng rng(Rng::derive(seed, i));
            auto [res, desc] = fn(i, rng);
            if (res > worst[w]) {
                worst[w] = res;
                what[w] = desc;
            }
        }
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    for (int w = 0; w < workers; ++w)
        if (worst[w] >= rep.max_residual) {
            rep.max_residual = worst[w];
            rep.worst_case_inputs = what[w];
        }
    rep.samples = samples;
    rep.seed = seed;
    rep.finalize();
}

inline Matrix provider_matrix(const WeightProvider& p, Cplx lam, Cplx mu) {
    int N = p.local_dim;
    Matrix R = Matrix::Zero(N * N, N * N);
    for (int a = 1; a <= N; ++a)
        for (int b = 1; b <= N; ++b)
            for (int c = 1; c <= N; ++c)
                for (int d = 1; d <= N; ++d)
                    if (a + b == c + d)
                        R((a - 1) * N + (b - 1), (c - 1) * N + (d - 1)) = p.w(lam, mu, a, b, c, d);
    return R;
}

template <typename Draw>
inline std::array<Cplx, 3> draw_triple(Rng& rng, const Draw& draw) {
    return {draw(rng), draw(rng), draw(rng)};
}

}  // namespace detail

/// Largest |weight| over ice-forbidden index tuples; tolerance 0 (exact).
inline CheckReport check_ice(const WeightProvider& p, int samples, std::uint64_t seed,
                             const SampleDomain& dom = {}) {
    CheckReport rep;
    rep.check_name = "ice_rule(" + p.name + ")";
    rep.tolerance = 0.0;
    int dim = p.compact() ? p.local_dim : p.sector_cap + 1;
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        Cplx lam = dom.draw(rng), mu = dom.draw(rng);
        double worst = 0.0;
        std::string what;
        for (int a = 1; a <= dim; ++a)
            for (int b = 1; b <= dim; ++b) {
                if (!p.compact() && a + b - 2 > p.sector_cap) continue;
                for (int c = 1; c <= dim; ++c)
                    for (int d = 1; d <= dim; ++d) {
                        if (a + b == c + d) continue;
                        if (!p.compact() && c + d - 2 > p.sector_cap) continue;
                        double v = std::abs(p.weight(lam, mu, a, b, c, d));
                        if (v > worst) {
                            worst = v;
                            what = "lam=" + format_complex(lam) + " mu=" + format_complex(mu);
                        }
                    }
            }
        return std::pair<double, std::string>(worst, what);
    });
    return rep;
}

/// Yang-Baxter in the three-parameter form
/// R12(l1,l2) R13(l1,l3) R23(l2,l3) = R23(l2,l3) R13(l1,l3) R12(l1,l2).
inline CheckReport check_ybe(const WeightProvider& p, int samples, std::uint64_t seed,
                             const SampleDomain& dom = {}, double tol = 1e-10) {
    CheckReport rep;
    rep.check_name = "yang_baxter(" + p.name + ")";
    rep.tolerance = tol;
    require(p.compact(), "check_ybe: use check_ybe_sl2r for sector-capped providers");
    int N = p.local_dim;
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            Cplx l1 = dom.draw(rng), l2 = dom.draw(rng), l3 = dom.draw(rng);
            try {
                Matrix r12 = embed_two_site(detail::provider_matrix(p, l1, l2), N, 3, 0, 1);
                Matrix r13 = embed_two_site(detail::provider_matrix(p, l1, l3), N, 3, 0, 2);
                Matrix r23 = embed_two_site(detail::provider_matrix(p, l2, l3), N, 3, 1, 2);
                Matrix lhs = r12 * r13 * r23;
                Matrix rhs = r23 * r13 * r12;
                double res = rel_residual(lhs, rhs);
                return std::pair<double, std::string>(
                    res, "l1=" + format_complex(l1) + " l2=" + format_complex(l2) +
                             " l3=" + format_complex(l3));
            } catch (const PoleError&) {
                continue;  // pole-adjacent sample; redraw
            }
        }
        return std::pair<double, std::string>(0.0, "all retries pole-adjacent");
    });
    return rep;
}

/// Charge-restricted Yang-Baxter for the sector-capped provider: both sides
/// restricted to three-site states of total charge <= cap, where every
/// needed weight is tabulated.
inline CheckReport check_ybe_sl2r(const sl2r::Spec& spec, int samples, std::uint64_t seed,
                                  int total_charge_cap = 4, double tol = 1e-10,
                                  const SampleDomain& dom = {}) {
    CheckReport rep;
    rep.check_name = "yang_baxter(sl2r charge<=" + std::to_string(total_charge_cap) + ")";
    rep.tolerance = tol;
    int Q = total_charge_cap;
    // enumerate three-site occupation states with total charge <= cap
    std::vector<std::array<int, 3>> states;
    for (int m1 = 0; m1 <= Q; ++m1)
        for (int m2 = 0; m2 + m1 <= Q; ++m2)
            for (int m3 = 0; m1 + m2 + m3 <= Q; ++m3) states.push_back({m1, m2, m3});
    std::map<std::array<int, 3>, int> index;
    for (int i = 0; i < int(states.size()); ++i) index[states[i]] = i;
    auto apply_r = [&](Cplx lam, Cplx mu, int si, int sj, const Matrix& vin) {
        Matrix out = Matrix::Zero(vin.rows(), vin.cols());
        for (int col = 0; col < vin.cols(); ++col)
            for (int row = 0; row < int(states.size()); ++row) {
                Cplx amp = vin(row, col);
                if (amp == Cplx(0.0)) continue;
                auto st = states[row];
                int total = st[si] + st[sj];
                for (int ai = 0; ai <= total; ++ai) {
                    int aj = total - ai;
                    Cplx w =
                        sl2r::r_weight(spec, lam, mu, ai + 1, aj + 1, st[si] + 1, st[sj] + 1);
                    if (w == Cplx(0.0)) continue;
                    auto ns = st;
                    ns[si] = ai;
                    ns[sj] = aj;
                    out(index.at(ns), col) += w * amp;
                }
            }
        return out;
    };
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            Cplx l1 = dom.draw(rng), l2 = dom.draw(rng), l3 = dom.draw(rng);
            try {
                Matrix id = eye(long(states.size()));
                Matrix lhs = apply_r(l1, l2, 0, 1, apply_r(l1, l3, 0, 2, apply_r(l2, l3, 1, 2, id)));
                Matrix rhs = apply_r(l2, l3, 1, 2, apply_r(l1, l3, 0, 2, apply_r(l1, l2, 0, 1, id)));
                return std::pair<double, std::string>(
                    rel_residual(lhs, rhs), "l1=" + format_complex(l1) + " l2=" + format_complex(l2) +
                                                " l3=" + format_complex(l3));
            } catch (const PoleError&) {
                continue;
            }
        }
        return std::pair<double, std::string>(0.0, "all retries pole-adjacent");
    });
    return rep;
}

/// R-check(lam,mu) R-check(mu,lam) = I for compact providers (R-check = P R).
inline CheckReport check_unitarity(const WeightProvider& p, int samples, std::uint64_t seed,
                                   const SampleDomain& dom = {}, double tol = 1e-12) {
    CheckReport rep;
    rep.check_name = "unitarity(" + p.name + ")";
    rep.tolerance = tol;
    require(p.compact(), "check_unitarity: compact providers only");
    int N = p.local_dim;
    Matrix perm = permutation(N);
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            Cplx lam = dom.draw(rng), mu = dom.draw(rng);
            try {
                Matrix rc1 = perm * detail::provider_matrix(p, lam, mu);
                Matrix rc2 = perm * detail::provider_matrix(p, mu, lam);
                double res = rel_residual(rc1 * rc2, eye(N * N));
                return std::pair<double, std::string>(
                    res, "lam=" + format_complex(lam) + " mu=" + format_complex(mu));
            } catch (const PoleError&) {
                continue;
            }
        }
        return std::pair<double, std::string>(0.0, "all retries pole-adjacent");
    });
    return rep;
}

/// Sector-block unitarity for the non-compact model: M_n(lam,mu) M_n(mu,lam) = I.
inline CheckReport check_unitarity_sl2r(const sl2r::Spec& spec, int samples, std::uint64_t seed,
                                        const SampleDomain& dom = {}, double tol = 1e-12) {
    CheckReport rep;
    rep.check_name = "unitarity(sl2r blocks n<=4)";
    rep.tolerance = tol;
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            Cplx lam = dom.draw(rng), mu = dom.draw(rng);
            try {
                double worst = 0.0;
                for (int n = 0; n <= sl2r::SECTOR_CAP; ++n) {
                    Matrix a = sl2r::sector_block(spec, n, lam, mu);
                    Matrix b = sl2r::sector_block(spec, n, mu, lam);
                    worst = std::max(worst, rel_residual(a * b, eye(n + 1)));
                }
                return std::pair<double, std::string>(
                    worst, "lam=" + format_complex(lam) + " mu=" + format_complex(mu));
            } catch (const PoleError&) {
                continue;
            }
        }
        return std::pair<double, std::string>(0.0, "all retries pole-adjacent");
    });
    return rep;
}

/// Constant braid relation (S x I)(I x S)(S x I) = (I x S)(S x I)(I x S).
inline CheckReport check_braid(const Matrix& braid, double tol = 1e-10) {
    CheckReport rep;
    rep.check_name = "braid_relation";
    rep.tolerance = tol;
    rep.samples = 1;
    int N2 = int(braid.rows());
    int N = int(std::lround(std::sqrt(double(N2))));
    require(N * N == N2 && braid.cols() == braid.rows(), "check_braid: need an N^2 x N^2 matrix");
    Matrix si = kron(braid, eye(N));
    Matrix is = kron(eye(N), braid);
    rep.max_residual = rel_residual(si * is * si, is * si * is);
    rep.finalize();
    return rep;
}

/// Two-color braid relation for a family S(lam, mu):
/// [I x S(l1,l2)][S(l1,l3) x I][I x S(l2,l3)] = [S(l2,l3) x I][I x S(l1,l3)][S(l1,l2) x I].
inline CheckReport check_colored_braid(const std::function<Matrix(Cplx, Cplx)>& family, int N,
                                       int samples, std::uint64_t seed,
                                       const SampleDomain& dom = SampleDomain::real_interval(),
                                       double tol = 1e-10) {
    CheckReport rep;
    rep.check_name = "colored_braid_relation";
    rep.tolerance = tol;
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        Cplx l1 = dom.draw(rng), l2 = dom.draw(rng), l3 = dom.draw(rng);
        Matrix a = kron(eye(N), family(l1, l2)) * kron(family(l1, l3), eye(N)) *
                   kron(eye(N), family(l2, l3));
        Matrix b = kron(family(l2, l3), eye(N)) * kron(eye(N), family(l1, l3)) *
                   kron(family(l1, l2), eye(N));
        return std::pair<double, std::string>(rel_residual(a, b),
                                              "l1=" + format_complex(l1) + " l2=" +
                                                  format_complex(l2) + " l3=" + format_complex(l3));
    });
    return rep;
}

/// Commutator norm ||[T(lam), T(mu)]|| / (||T(lam)|| ||T(mu)||).
inline CheckReport check_transfer_commute(const WeightProvider& p, const Lattice& lat, int samples,
                                          std::uint64_t seed, const SampleDomain& dom = {},
                                          double tol = 1e-10) {
    CheckReport rep;
    rep.check_name = "transfer_commute(" + p.name + ",L=" + std::to_string(lat.L) + ")";
    rep.tolerance = tol;
    detail::parallel_max(samples, seed, rep, [&](int, Rng& rng) {
        for (int attempt = 0; attempt < 10; ++attempt) {
            Cplx lam = dom.draw(rng), mu = dom.draw(rng);
            try {
                Matrix tl = engine::transfer(p, lat, lam).matrix;
                Matrix tm = engine::transfer(p, lat, mu).matrix;
                double res = (tl * tm - tm * tl).norm() /
                             std::max(tl.norm() * tm.norm(), 1e-300);
                return std::pair<double, std::string>(
                    res, "lam=" + format_complex(lam) + " mu=" + format_complex(mu));
            } catch (const PoleError&) {
                continue;
            }
        }
        return std::pair<double, std::string>(0.0, "all retries pole-adjacent");
    });
    return rep;
}

/// Control wrapper: bumps one ice-allowed weight so every identity check
/// must fail; used to certify harness sensitivity.
inline WeightProvider perturbed(const WeightProvider& base, double eps = 1e-6) {
    WeightProvider p = base;
    p.name = base.name + "+perturbation";
    auto inner = base.weight;
    p.weight = [inner, eps](Cplx lam, Cplx mu, int a, int b, int c, int d) {
        Cplx w = inner(lam, mu, a, b, c, d);
        if (a == 1 && b == 2 && c == 2 && d == 1) w += eps;
        return w;
    };
    return p;
}

}  // namespace aba::verify
