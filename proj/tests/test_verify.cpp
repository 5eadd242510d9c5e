#include <catch2/catch_amalgamated.hpp>

#include "aba/nonadditive.hpp"
#include "aba/report.hpp"
#include "aba/verify.hpp"
#include "aba/xxz.hpp"

using namespace aba;

TEST_CASE("checks are deterministic given the seed") {
    xxz::Spec s(3, 0.43);
    WeightProvider p = xxz::provider(s);
    auto a = verify::check_ybe(p, 5, 991);
    auto b = verify::check_ybe(p, 5, 991);
    REQUIRE(a.max_residual == b.max_residual);
    REQUIRE(a.worst_case_inputs == b.worst_case_inputs);
    auto c = verify::check_ybe(p, 5, 992);
    REQUIRE(c.seed != a.seed);
}

TEST_CASE("perturbed providers fail every identity check") {
    xxz::Spec s(3, 0.48);
    WeightProvider good = xxz::provider(s);
    WeightProvider bad = verify::perturbed(good);

    REQUIRE(verify::check_ybe(good, 4, 5).passed);
    REQUIRE(!verify::check_ybe(bad, 4, 5).passed);

    REQUIRE(verify::check_unitarity(good, 4, 6).passed);
    REQUIRE(!verify::check_unitarity(bad, 4, 6).passed);

    Lattice lat(2, {Cplx(0.04, 0.01), Cplx(-0.05, 0.03)});
    REQUIRE(verify::check_transfer_commute(good, lat, 3, 7).passed);
    REQUIRE(!verify::check_transfer_commute(bad, lat, 3, 7).passed);

    // a random matrix is not a braid
    Rng rng(8);
    Matrix junk(9, 9);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) junk(i, j) = rng.complex_in_box(-1, 1, -1, 1);
    REQUIRE(!verify::check_braid(junk).passed);
}

TEST_CASE("transfer commutativity across families") {
    {
        xxz::Spec s(2, 0.39);
        Lattice lat(4, {Cplx(0.02, 0.01), Cplx(-0.03, 0.02), Cplx(0.04, -0.01), Cplx(0.01, 0.03)});
        REQUIRE(verify::check_transfer_commute(xxz::provider(s), lat, 2, 17).passed);
    }
    {
        nonadd::Spec s(3, 0, true);
        Lattice lat(3, {Cplx(0.05, 0.0), Cplx(-0.08, 0.0), Cplx(0.11, 0.0)});
        auto rep = verify::check_transfer_commute(nonadd::provider(s), lat, 2, 19,
                                                  verify::SampleDomain::real_interval());
        INFO("nonadd commute residual " << rep.max_residual);
        REQUIRE(rep.passed);
    }
}

TEST_CASE("report serialization is deterministic and format-complete") {
    report::Report r;
    r.task = "verify";
    r.seed = 42;
    r.config_echo = {{"model", "xxz"}, {"N", "3"}};
    report::Item it;
    it.set("check", "yang_baxter").set("residual", 1.25e-12).set("passed", true);
    r.items.push_back(it);
    report::Item it2;
    it2.set("check", "unitarity").set("residual", 3.5e-13).set("passed", true);
    r.items.push_back(it2);

    std::string a = report::serialize(r, "json-lines");
    std::string b = report::serialize(r, "json-lines");
    REQUIRE(a == b);
    REQUIRE(a.find("\"task\":\"verify\"") != std::string::npos);
    REQUIRE(a.find("1.2499999999999999e-12") != std::string::npos);  // 17 significant digits

    std::string csv = report::serialize(r, "csv-summary");
    REQUIRE(csv.rfind("check,residual,passed\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + one row per item

    std::string human = report::serialize(r, "human-text");
    REQUIRE(human.find("[PASS]") != std::string::npos);
    REQUIRE(human.find("ALL CHECKS PASSED") != std::string::npos);

    REQUIRE_THROWS_AS(report::serialize(r, "yaml"), std::invalid_argument);
}

TEST_CASE("complex literal parsing round trip") {
    REQUIRE(parse_complex("1.5") == Cplx(1.5, 0.0));
    REQUIRE(parse_complex("-2i") == Cplx(0.0, -2.0));
    REQUIRE(parse_complex("0.3-0.2i") == Cplx(0.3, -0.2));
    REQUIRE(parse_complex("1e-3+2.5e-4i") == Cplx(1e-3, 2.5e-4));
    Cplx z(0.123456789012345, -3.14159);
    REQUIRE(parse_complex(format_complex(z)) == z);
}
