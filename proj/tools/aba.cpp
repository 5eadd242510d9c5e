// Batch driver for the vertex-model toolkit: builds one model from flags or
// an INI config, runs one task (verify / spectrum / bethe / offshell / limit
// / hamiltonian) and emits a deterministic structured report. Exit status:
// 0 all asserted tolerances pass, 1 numerical failure, 2 invalid config.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "aba/colored.hpp"
#include "aba/engine.hpp"
#include "aba/nonadditive.hpp"
#include "aba/report.hpp"
#include "aba/sl2r.hpp"
#include "aba/solver.hpp"
#include "aba/verify.hpp"
#include "aba/xxz.hpp"

using namespace aba;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelOptions {
    std::string family = "xxz";
    int N = 3;
    double gamma = 0.4;
    int k = 1;
    std::string gamma_bar = "0.35+0.15i";
    int omega_choice = 0;
    double s = -0.5;
};

struct Model {
    std::string family;
    std::optional<xxz::Spec> xxz_spec;
    std::optional<colored::Spec> colored_spec;
    std::optional<nonadd::Spec> nonadd_spec;
    std::optional<sl2r::Spec> sl2r_spec;
    WeightProvider prov;

    bool compact() const { return prov.compact(); }
};

Model build_model(const ModelOptions& mo) {
    Model m;
    m.family = mo.family;
    try {
        if (mo.family == "xxz") {
            m.xxz_spec.emplace(mo.N, mo.gamma);
            m.prov = xxz::provider(*m.xxz_spec);
        } else if (mo.family == "colored") {
            m.colored_spec.emplace(mo.N, mo.k, parse_complex(mo.gamma_bar));
            m.prov = colored::provider(*m.colored_spec);
        } else if (mo.family == "nonadd") {
            m.nonadd_spec.emplace(mo.N, mo.omega_choice, /*allow_complex=*/true);
            m.prov = nonadd::provider(*m.nonadd_spec);
        } else if (mo.family == "sl2r") {
            m.sl2r_spec.emplace(mo.s);
            m.prov = sl2r::provider(*m.sl2r_spec);
        } else {
            throw ConfigError("model.family: must be one of xxz, colored, nonadd, sl2r");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    } catch (const NonGenericError& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return m;
}

Lattice build_lattice(int L, const std::string& mu_list, std::uint64_t seed, double mu_scale) {
    std::vector<Cplx> mus;
    if (!mu_list.empty()) {
        std::stringstream ss(mu_list);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) mus.push_back(parse_complex(tok));
        if (int(mus.size()) != L)
            throw ConfigError("lattice.mu: need exactly L inhomogeneities");
    } else if (mu_scale > 0.0) {
        Rng rng(Rng::derive(seed, 0xA77));
        for (int i = 0; i < L; ++i)
            mus.push_back(rng.complex_in_box(-mu_scale, mu_scale, -mu_scale, mu_scale));
    } else {
        mus.assign(L, Cplx(0.0, 0.0));
    }
    try {
        return Lattice(L, mus);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("lattice: ") + e.what());
    }
}

verify::SampleDomain domain_for(const Model& m) {
    if (m.family == "nonadd") return verify::SampleDomain::real_interval();
    return {};
}

void echo_model(report::Report& rep, const ModelOptions& mo, const Model& m) {
    rep.config_echo.emplace_back("model", mo.family);
    if (m.family == "xxz") {
        rep.config_echo.emplace_back("N", std::to_string(mo.N));
        rep.config_echo.emplace_back("gamma", format_double(mo.gamma));
    } else if (m.family == "colored") {
        rep.config_echo.emplace_back("N", std::to_string(mo.N));
        rep.config_echo.emplace_back("k", std::to_string(mo.k));
        rep.config_echo.emplace_back("gamma_bar", format_complex(m.colored_spec->gamma_bar));
    } else if (m.family == "nonadd") {
        rep.config_echo.emplace_back("N", std::to_string(mo.N));
        rep.config_echo.emplace_back("omega_choice", std::to_string(mo.omega_choice));
    } else {
        rep.config_echo.emplace_back("s", format_double(mo.s));
    }
}

report::Item check_to_item(const verify::CheckReport& c) {
    report::Item it;
    it.set("check", c.check_name)
        .set("samples", c.samples)
        .set("max_residual", c.max_residual)
        .set("tolerance", c.tolerance)
        .set("passed", c.passed)
        .set("seed", c.seed)
        .set("worst_case", c.worst_case_inputs);
    return it;
}

// ---- tasks -----------------------------------------------------------------

void run_verify(report::Report& rep, const Model& m, const Lattice& lat, int samples,
                std::uint64_t seed) {
    auto dom = domain_for(m);
    std::vector<verify::CheckReport> checks;
    checks.push_back(verify::check_ice(m.prov, samples, Rng::derive(seed, 1), dom));
    if (m.family == "xxz")
        checks.push_back(verify::check_braid(xxz::braid_matrix(*m.xxz_spec)));
    if (m.family == "colored")
        checks.push_back(verify::check_braid(colored::braid_matrix(*m.colored_spec)));
    if (m.family == "nonadd") {
        Matrix perm = permutation(m.prov.local_dim);
        auto spec = *m.nonadd_spec;
        auto family = [spec, perm](Cplx l, Cplx mu) {
            return Matrix(perm * nonadd::r_matrix(spec, l, mu));
        };
        checks.push_back(verify::check_colored_braid(family, m.prov.local_dim, samples,
                                                     Rng::derive(seed, 2)));
    }
    if (m.compact()) {
        checks.push_back(verify::check_ybe(m.prov, samples, Rng::derive(seed, 3), dom));
        if (m.family != "nonadd")
            checks.push_back(verify::check_unitarity(m.prov, samples, Rng::derive(seed, 4), dom));
        checks.push_back(
            verify::check_transfer_commute(m.prov, lat, std::min(samples, 4), Rng::derive(seed, 5), dom));
    } else {
        checks.push_back(verify::check_ybe_sl2r(*m.sl2r_spec, samples, Rng::derive(seed, 3)));
        checks.push_back(verify::check_unitarity_sl2r(*m.sl2r_spec, samples, Rng::derive(seed, 4)));
    }
    for (const auto& c : checks) {
        rep.items.push_back(check_to_item(c));
        rep.pass = rep.pass && c.passed;
    }
}

void run_spectrum(report::Report& rep, const Model& m, const Lattice& lat, Cplx lam) {
    if (!m.compact())
        throw ConfigError("task.spectrum: dense transfer spectra need a compact model; "
                          "use the hamiltonian task for sl2r");
    auto t = engine::transfer(m.prov, lat, lam);
    for (const auto& [charge, block] : t.sector_blocks) {
        EigResult ed = eig(block);
        std::vector<Cplx> vals = ed.values;
        std::sort(vals.begin(), vals.end(), [](Cplx a, Cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        for (size_t i = 0; i < vals.size(); ++i) {
            report::Item it;
            it.set("sector", charge).set("index", std::int64_t(i)).set("eigenvalue", vals[i]);
            rep.items.push_back(it);
        }
    }
}

void run_bethe(report::Report& rep, const Model& m, const Lattice& lat, int n, Cplx lam,
               std::uint64_t seed, double tol) {
    std::vector<Cplx> seeds;
    if (m.family == "xxz") seeds = xxz::momentum_seeds(*m.xxz_spec, lat.L);
    if (m.family == "colored") seeds = colored::momentum_seeds(*m.colored_spec, lat.L);
    if (m.family == "sl2r") seeds = sl2r::momentum_seeds(*m.sl2r_spec, lat.L);
    if (m.family == "nonadd") seeds = nonadd::momentum_seeds(lat.L);
    SolveOptions opt;
    opt.rng_seed = Rng::derive(seed, 11);
    auto sols = solve_bae(m.prov, lat, n, seeds, opt);

    std::optional<EigResult> sector;
    if (m.compact()) {
        auto t = engine::transfer(m.prov, lat, lam);
        sector = eig(t.sector_blocks.at(n));
    }
    for (size_t i = 0; i < sols.size(); ++i) {
        report::Item it;
        it.set("solution", std::int64_t(i));
        for (size_t r = 0; r < sols[i].roots.size(); ++r)
            it.set("root" + std::to_string(r), sols[i].roots[r]);
        double worst = 0.0;
        for (double rr : sols[i].residuals) worst = std::max(worst, rr);
        it.set("bae_residual", worst);
        int cutoff = m.compact() ? 0 : sl2r::SECTOR_CAP;
        Cplx lambda_val = engine::eigenvalue_generic(m.prov, lat, sols[i].roots, lam, cutoff);
        it.set("lambda", lambda_val);
        if (sector) {
            double gap = 1e300;
            for (Cplx ev : sector->values) gap = std::min(gap, std::abs(ev - lambda_val));
            it.set("dense_gap", gap).set("passed", worst <= tol && gap <= 1e-8);
            rep.pass = rep.pass && worst <= tol && gap <= 1e-8;
        } else {
            it.set("passed", worst <= tol);
            rep.pass = rep.pass && worst <= tol;
        }
        rep.items.push_back(it);
    }
    if (sols.empty()) {
        report::Item it;
        it.set("diagnostic", "no Bethe roots converged from any seed").set("passed", false);
        rep.items.push_back(it);
        rep.pass = false;
    }
}

void run_offshell(report::Report& rep, const Model& m, const Lattice& lat, int n, Cplx lam,
                  std::uint64_t seed, double tol) {
    Rng rng(Rng::derive(seed, 21));
    std::vector<Cplx> roots;
    double box = m.family == "nonadd" ? 0.45 : 0.5;
    for (int i = 0; i < n; ++i)
        roots.push_back(m.family == "nonadd" ? Cplx(rng.uniform(-box, box), 0.0)
                                             : rng.complex_in_box(-box, box, -box, box));
    auto dec = engine::offshell_decomposition_check(m.prov, lat, roots, lam);
    report::Item it;
    it.set("check", "offshell_decomposition")
        .set("n", n)
        .set("aux_cutoff", dec.aux_cutoff)
        .set("truncated", dec.truncated)
        .set("residual", dec.residual)
        .set("unwanted_norm", dec.unwanted_norm)
        .set("passed", dec.residual <= tol);
    rep.items.push_back(it);
    rep.pass = rep.pass && dec.residual <= tol;

    // closed form vs recurrence for every reachable amplitude
    engine::AmplitudeEngine amp(m.prov);
    int bmax = m.compact() ? m.prov.local_dim - 1 : 3;
    for (int b = 1; b <= bmax; ++b)
        for (int c : std::vector<int>{0, b})
            for (int a = 1; m.compact() ? a <= m.prov.local_dim - b : a + b <= 5; ++a) {
                std::vector<Cplx> raps;
                for (int i = 0; i < b; ++i)
                    raps.push_back(m.family == "nonadd" ? Cplx(rng.uniform(-box, box), 0.0)
                                                        : rng.complex_in_box(-box, box, -box, box));
                Cplx rec = amp.f(c, a, lam, raps);
                Cplx closed;
                if (m.family == "xxz") closed = xxz::f_closed(*m.xxz_spec, c, b, a, lam, raps);
                else if (m.family == "colored")
                    closed = colored::f_closed(*m.colored_spec, c, b, a, lam, raps);
                else if (m.family == "nonadd")
                    closed = nonadd::f_closed(*m.nonadd_spec, c, b, a, lam, raps);
                else closed = sl2r::f_closed(*m.sl2r_spec, c, b, a, lam, raps);
                double mod_err = std::abs(std::abs(rec / closed) - 1.0);
                report::Item fit;
                fit.set("check", "closed_vs_recurrence")
                    .set("c", c)
                    .set("b", b)
                    .set("a", a)
                    .set("modulus_error", mod_err)
                    .set("phase", std::arg(rec / closed))
                    .set("passed", mod_err <= 1e-10);
                rep.items.push_back(fit);
                rep.pass = rep.pass && mod_err <= 1e-10;
            }
}

void run_limit(report::Report& rep, const Model& m, const std::vector<int>& grid, int k) {
    if (m.family != "sl2r") throw ConfigError("task.limit: the limit task needs --model sl2r");
    const sl2r::Spec& spec = *m.sl2r_spec;
    Cplx lam(0.82, 0.21), mu(-0.47, 0.33);
    Cplx theta_target = sl2r::theta(spec, lam, mu);
    int a = 2;
    double f_target = std::abs(sl2r::f1_closed(spec, a, lam, mu));
    for (int N : grid) {
        auto lm = sl2r::limit_map(spec, N, k);
        double theta_err =
            std::abs(colored::theta(lm.colored_spec, lm.rescale * lam, lm.rescale * mu) -
                     theta_target);
        double f_err = std::abs(std::abs(colored::f1_closed(lm.colored_spec, a, lm.rescale * lam,
                                                            lm.rescale * mu)) -
                                f_target);
        report::Item it;
        it.set("route", "colored").set("N", N).set("theta_error", theta_err).set("f_error", f_err);
        if (spec.s == -0.5) {
            auto [xs, rescale] = sl2r::limit_map_xxz(N);
            it.set("theta_error_xxz",
                   std::abs(xxz::theta(xs, rescale * lam, rescale * mu) - theta_target));
        }
        rep.items.push_back(it);
    }
    // the specialization identity at the compact end of the family
    colored::Spec sp = colored::Spec::unchecked(4, k % 2 == 0 ? 1 : k, colored::special_gamma_bar(4, k % 2 == 0 ? 1 : k));
    xxz::Spec xs = colored::specialize_to_xxz(sp);
    double worst = 0.0;
    Rng rng(5);
    for (int t = 0; t < 5; ++t) {
        Cplx l = rng.complex_in_box(-0.4, 0.4, -0.25, 0.25);
        Cplx mm = rng.complex_in_box(-0.4, 0.4, -0.25, 0.25);
        worst = std::max(worst, std::abs(colored::theta(sp, l, mm) - xxz::theta(xs, l, mm)));
    }
    report::Item sp_item;
    sp_item.set("check", "xxz_specialization_theta").set("max_error", worst).set("passed",
                                                                                 worst <= 1e-10);
    rep.items.push_back(sp_item);
    rep.pass = rep.pass && worst <= 1e-10;
}

void run_hamiltonian(report::Report& rep, const Model& m, int L, int n, double tol) {
    if (m.family != "sl2r")
        throw ConfigError("task.hamiltonian: the spin-chain Hamiltonian is the sl2r model's");
    const sl2r::Spec& spec = *m.sl2r_spec;
    Matrix h = sl2r::build_hamiltonian(spec, L, n);
    double sym = (h - h.transpose()).norm();
    EigResult ed = eig(h);
    std::vector<double> vals;
    for (Cplx v : ed.values) vals.push_back(v.real());
    std::sort(vals.begin(), vals.end());
    for (size_t i = 0; i < vals.size(); ++i) {
        report::Item it;
        it.set("kind", "eigenvalue").set("index", std::int64_t(i)).set("value", vals[i]);
        rep.items.push_back(it);
    }
    report::Item sy;
    sy.set("kind", "symmetry").set("asymmetry_norm", sym).set("passed", sym <= 1e-12);
    rep.items.push_back(sy);
    rep.pass = rep.pass && sym <= 1e-12;

    for (int sec = 0; sec <= sl2r::SECTOR_CAP; ++sec) {
        Matrix from_r = sl2r::hamiltonian_from_r(spec, sec);
        Matrix density = Matrix::Zero(sec + 1, sec + 1);
        for (int mm = 0; mm <= sec; ++mm) {
            auto act = sl2r::hamiltonian_action(spec, mm, sec - mm);
            for (const auto& [target, coeff] : act) density(target.first, mm) += coeff;
        }
        double res = rel_residual(from_r, density);
        report::Item it;
        it.set("kind", "log_derivative_vs_action").set("sector", sec).set("residual", res)
            .set("passed", res <= tol);
        rep.items.push_back(it);
        rep.pass = rep.pass && res <= tol;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"U(1) vertex-model toolkit: integrability checks, spectra, Bethe roots, "
                 "off-shell audits, limit comparisons"};
    app.set_config("--config", "", "INI config file with [model]/[lattice]/[task] sections");
    app.require_subcommand(1);

    ModelOptions mo;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::string out_path, format = "human-text";
    int L = 2, n = 1, samples = 8;
    std::string mu_list;
    double mu_scale = 0.0;
    std::string lambda_str = "0.27+0.15i";
    std::vector<int> limit_grid{64, 128, 256};
    bool timings = false;

    app.add_option("--seed", seed, "RNG seed; recorded in every output");
    app.add_option("--tol", tol, "assertion tolerance for residual checks");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "json-lines | csv-summary | human-text");
    app.add_flag("--timings", timings, "print wall-clock timing to stderr");
    app.add_option("--model", mo.family, "xxz | colored | nonadd | sl2r");
    app.add_option("--N", mo.N, "bond states (compact families)");
    app.add_option("--gamma", mo.gamma, "xxz anisotropy");
    app.add_option("--k", mo.k, "colored branch, coprime with N");
    app.add_option("--gamma-bar", mo.gamma_bar, "colored free parameter, re+imi");
    app.add_option("--omega-choice", mo.omega_choice, "non-additive omega selector");
    app.add_option("--s", mo.s, "sl2r spin, s < 0");
    app.add_option("--L", L, "lattice sites");
    app.add_option("--mu", mu_list, "comma-separated inhomogeneities, re+imi each");
    app.add_option("--mu-scale", mu_scale, "draw random inhomogeneities from this box");
    app.add_option("--lambda", lambda_str, "spectral point, re+imi");
    app.add_option("--n", n, "excitation number / charge sector");
    app.add_option("--samples", samples, "sample count for randomized checks");
    app.add_option("--limit-grid", limit_grid, "N values for the limit task");

    auto* c_verify = app.add_subcommand("verify", "run the identity-check suite");
    auto* c_spectrum = app.add_subcommand("spectrum", "dense transfer spectrum by charge sector");
    auto* c_bethe = app.add_subcommand("bethe", "solve the Bethe equations and cross-check");
    auto* c_offshell = app.add_subcommand("offshell", "off-shell decomposition and amplitude audit");
    auto* c_limit = app.add_subcommand("limit", "compact-to-noncompact convergence table");
    auto* c_ham = app.add_subcommand("hamiltonian", "sl2r sector Hamiltonians");
    for (auto* sub : {c_verify, c_spectrum, c_bethe, c_offshell, c_limit, c_ham})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    report::Report rep;
    rep.seed = seed;
    int exit_code = 0;
    try {
        Model model = build_model(mo);
        Lattice lat = build_lattice(L, mu_list, seed, mu_scale);
        Cplx lam = parse_complex(lambda_str);
        echo_model(rep, mo, model);
        rep.config_echo.emplace_back("L", std::to_string(L));
        rep.config_echo.emplace_back("lambda", format_complex(lam));
        rep.config_echo.emplace_back("tol", format_double(tol));

        if (c_verify->parsed()) {
            rep.task = "verify";
            run_verify(rep, model, lat, samples, seed);
        } else if (c_spectrum->parsed()) {
            rep.task = "spectrum";
            run_spectrum(rep, model, lat, lam);
        } else if (c_bethe->parsed()) {
            rep.task = "bethe";
            run_bethe(rep, model, lat, n, lam, seed, tol);
        } else if (c_offshell->parsed()) {
            rep.task = "offshell";
            run_offshell(rep, model, lat, n, lam, seed, tol);
        } else if (c_limit->parsed()) {
            rep.task = "limit";
            run_limit(rep, model, limit_grid, mo.k);
        } else if (c_ham->parsed()) {
            rep.task = "hamiltonian";
            run_hamiltonian(rep, model, L, n, tol);
        }
        if (!rep.pass) exit_code = 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        report::Item it;
        it.set("error", e.what()).set("passed", false);
        rep.items.push_back(it);
        rep.pass = false;
        exit_code = 1;
    }

    std::string payload = report::serialize(rep, format);
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "config error: output path not writable: " << out_path << "\n";
            return 2;
        }
        f << payload;
    }
    if (timings) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        std::cerr << "task " << rep.task << " wall-clock " << ms << " ms\n";
    }
    return exit_code;
}
