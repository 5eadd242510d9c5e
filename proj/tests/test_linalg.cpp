#include <catch2/catch_amalgamated.hpp>

#include "aba/eig.hpp"

using namespace aba;

namespace {
Matrix random_matrix(int n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.complex_in_box(-1, 1, -1, 1);
    return m;
}
}  // namespace

TEST_CASE("weyl units") {
    Matrix e12 = weyl(2, 1, 2);
    REQUIRE(e12(0, 1) == Cplx(1.0));
    REQUIRE(e12.cwiseAbs().sum() == 1.0);

    Matrix e22 = weyl(3, 2, 2);
    REQUIRE((e22 * e22 - e22).norm() == 0.0);

    Matrix sum = Matrix::Zero(4, 4);
    for (int a = 1; a <= 4; ++a) sum += weyl(4, a, a);
    REQUIRE((sum - eye(4)).norm() == 0.0);

    REQUIRE_THROWS_AS(weyl(2, 0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(weyl(2, 1, 3), std::invalid_argument);
}

TEST_CASE("kron ordering and algebra") {
    REQUIRE((kron(eye(2), eye(2)) - eye(4)).norm() == 0.0);

    // left factor is the slow index: 1 lands at row 2, col 3 (1-based)
    Matrix k = kron(weyl(2, 1, 2), weyl(2, 2, 1));
    REQUIRE(k(1, 2) == Cplx(1.0));
    REQUIRE(k.cwiseAbs().sum() == 1.0);

    Matrix a = random_matrix(2, 1), b = random_matrix(2, 2);
    Matrix c = random_matrix(2, 3), d = random_matrix(2, 4);
    REQUIRE((kron(a, b) * kron(c, d) - kron(Matrix(a * c), Matrix(b * d))).norm() < 1e-13);

    // associativity
    Matrix lhs = kron(kron(a, b), c);
    Matrix rhs = kron(a, kron(b, c));
    REQUIRE(rel_residual(lhs, rhs) < 1e-14);
}

TEST_CASE("permutation operator") {
    Matrix p2 = permutation(2);
    Matrix expect(4, 4);
    expect << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    REQUIRE((p2 - expect).norm() == 0.0);

    for (int N = 2; N <= 6; ++N) {
        Matrix p = permutation(N);
        REQUIRE((p * p - eye(N * N)).norm() == 0.0);
    }

    Rng rng(7);
    int N = 4;
    Vector u(N), v(N);
    for (int i = 0; i < N; ++i) {
        u(i) = rng.complex_in_box(-1, 1, -1, 1);
        v(i) = rng.complex_in_box(-1, 1, -1, 1);
    }
    Vector uv(N * N), vu(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            uv(i * N + j) = u(i) * v(j);
            vu(i * N + j) = v(i) * u(j);
        }
    REQUIRE((permutation(N) * uv - vu).norm() < 1e-15);
}

TEST_CASE("eig basics and residual certificate") {
    EigResult id3 = eig(eye(3));
    for (Cplx v : id3.values) REQUIRE(std::abs(v - 1.0) < 1e-14);

    EigResult p2 = eig(permutation(2));
    std::vector<double> got;
    for (Cplx v : p2.values) got.push_back(v.real());
    std::sort(got.begin(), got.end());
    REQUIRE(std::abs(got[0] + 1.0) < 1e-12);
    for (int i = 1; i < 4; ++i) REQUIRE(std::abs(got[i] - 1.0) < 1e-12);

    EigResult r = eig(random_matrix(6, 42));
    REQUIRE(r.max_residual <= 1e-10);
}

TEST_CASE("spectral projectors") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    a(2, 2) = 2.0;
    EigResult ed = eig(a);
    std::vector<int> g1, g2;
    for (int i = 0; i < 3; ++i)
        (std::abs(ed.values[i] - 1.0) < 1e-12 ? g1 : g2).push_back(i);
    auto proj = spectral_projectors(a, {g1, g2}, 1e-8);
    Matrix d1 = Matrix::Zero(3, 3);
    d1(0, 0) = d1(1, 1) = 1.0;
    REQUIRE((proj[0] - d1).norm() < 1e-12);
    REQUIRE((proj[1] - (eye(3) - d1)).norm() < 1e-12);

    // symmetric / antisymmetric split of the swap operator
    Matrix p = permutation(2);
    EigResult pd = eig(p);
    std::vector<int> sym, anti;
    for (int i = 0; i < 4; ++i)
        (pd.values[i].real() > 0 ? sym : anti).push_back(i);
    auto sp = spectral_projectors(p, {sym, anti}, 1e-8);
    REQUIRE((sp[0] - 0.5 * (eye(4) + p)).norm() < 1e-12);
    REQUIRE((sp[1] - 0.5 * (eye(4) - p)).norm() < 1e-12);

    // algebra: orthogonal, idempotent, complete
    Matrix m = random_matrix(5, 3);
    EigResult md = eig(m);
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < 5; ++i) groups.push_back({i});
    auto mp = spectral_projectors(m, groups, 1e-8);
    Matrix sum = Matrix::Zero(5, 5);
    Matrix recon = Matrix::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
        sum += mp[i];
        recon += md.values[i] * mp[i];
        REQUIRE((mp[i] * mp[i] - mp[i]).norm() < 1e-12);
        for (int j = 0; j < i; ++j) REQUIRE((mp[i] * mp[j]).norm() < 1e-12);
    }
    REQUIRE((sum - eye(5)).norm() < 1e-12);
    REQUIRE(rel_residual(recon, m) < 1e-10);

    // grouping eigenvalues that differ beyond tol is an error
    std::vector<int> all{0, 1, 2};
    REQUIRE_THROWS_AS(spectral_projectors(a, {all}, 1e-8), std::invalid_argument);
}
