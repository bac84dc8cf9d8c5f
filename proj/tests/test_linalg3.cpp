#include <cmath>

#include <doctest.h>

#include "eulertop/errors.hpp"
#include "eulertop/linalg3.hpp"
#include "test_util.hpp"

using namespace eulertop;
using testutil::charpoly_eigenvalues;
using testutil::make_rng;
using testutil::random_sym;
using testutil::random_spd;
using testutil::random_vec;
using testutil::uniform;

namespace {

double mat_diff_max(const Mat3& a, const Mat3& b) { return max_abs(a - b); }

}  // namespace

TEST_CASE("cross: canonical basis and hand-expanded determinant") {
    const Vec3 e1{1, 0, 0}, e2{0, 1, 0};
    const Vec3 c = cross(e1, e2);
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == 1.0);

    const Vec3 d = cross({1, 2, 3}, {4, 5, 6});
    CHECK(d[0] == -3.0);
    CHECK(d[1] == 6.0);
    CHECK(d[2] == -3.0);
}

TEST_CASE("cross: u x u vanishes and antisymmetry is exact") {
    auto rng = make_rng(101);
    for (int i = 0; i < 200; ++i) {
        const Vec3 u = random_vec(rng, -5, 5);
        const Vec3 v = random_vec(rng, -5, 5);
        const Vec3 uu = cross(u, u);
        CHECK(uu[0] == 0.0);
        CHECK(uu[1] == 0.0);
        CHECK(uu[2] == 0.0);
        const Vec3 uv = cross(u, v);
        const Vec3 vu = cross(v, u);
        for (int j = 0; j < 3; ++j) CHECK(uv[j] == -vu[j]);
    }
}

TEST_CASE("cross_k: identity collapses to cross, zero annihilates") {
    auto rng = make_rng(102);
    const SymMat3 id = SymMat3::identity();
    const SymMat3 zero{};
    for (int i = 0; i < 50; ++i) {
        const Vec3 u = random_vec(rng, -2, 2);
        const Vec3 v = random_vec(rng, -2, 2);
        const Vec3 a = cross_k(id, u, v);
        const Vec3 b = cross(u, v);
        for (int j = 0; j < 3; ++j) CHECK(a[j] == b[j]);
        const Vec3 z = cross_k(zero, u, v);
        for (int j = 0; j < 3; ++j) CHECK(z[j] == 0.0);
    }

    const Vec3 r = cross_k(SymMat3::diagonal(1, 2, 3), {1, 0, 0}, {0, 1, 0});
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
    CHECK(r[2] == 3.0);
}

TEST_CASE("cross_k antisymmetry is exact for any signature") {
    auto rng = make_rng(103);
    for (int i = 0; i < 200; ++i) {
        const SymMat3 m = random_sym(rng, -3, 3);
        const Vec3 u = random_vec(rng, -2, 2);
        const Vec3 v = random_vec(rng, -2, 2);
        const Vec3 a = cross_k(m, u, v);
        const Vec3 b = cross_k(m, v, u);
        for (int j = 0; j < 3; ++j) CHECK(a[j] == -b[j]);
    }
}

TEST_CASE("hat_k: zero vector, so(3) reduction, diagonal case") {
    const Mat3 z = hat_k(SymMat3::diagonal(4, 5, 6), Vec3{});
    CHECK(max_abs(z) == 0.0);

    const Mat3 h = hat_k(SymMat3::identity(), {1, 0, 0});
    CHECK(mat_diff_max(h, skew({1, 0, 0})) == 0.0);

    // diag(k1,k2,k3) with s = e3: only entries (0,1) = -k2 and (1,0) = k1.
    const Mat3 d = hat_k(SymMat3::diagonal(7, 11, 13), {0, 0, 1});
    CHECK(d(0, 1) == -11.0);
    CHECK(d(1, 0) == 7.0);
    CHECK(d(0, 0) == 0.0);
    CHECK(d(0, 2) == 0.0);
    CHECK(d(1, 1) == 0.0);
    CHECK(d(1, 2) == 0.0);
    CHECK(d(2, 0) == 0.0);
    CHECK(d(2, 1) == 0.0);
    CHECK(d(2, 2) == 0.0);
}

TEST_CASE("hat_k: defining equation S u = s x (K u)") {
    auto rng = make_rng(104);
    for (int i = 0; i < 200; ++i) {
        const SymMat3 k = random_sym(rng, -2, 2);
        const Vec3 s = random_vec(rng, -2, 2);
        const Vec3 u = random_vec(rng, -2, 2);
        const Vec3 lhs = hat_k(k, s) * u;
        const Vec3 rhs = cross(s, k * u);
        CHECK(norm(lhs - rhs) <= 1e-14 * std::fmax(1.0, norm(rhs)));
    }
}

TEST_CASE("hat_k: K-skew identity S^T K + K S = 0") {
    auto rng = make_rng(105);
    for (int i = 0; i < 500; ++i) {
        const SymMat3 k = random_sym(rng, -1, 1);
        const Vec3 s = random_vec(rng, -1, 1);
        const Mat3 hat = hat_k(k, s);
        const Mat3 resid = transpose(hat) * k.full() + k.full() * hat;
        CHECK(max_abs(resid) <= 1e-14);
    }
}

TEST_CASE("hat_k: commutator realizes the twisted cross product") {
    auto rng = make_rng(106);
    // Any signature, singular K included: the identity
    // [hat(u), hat(v)] = hat(K (u x v)) is checked numerically.
    for (int i = 0; i < 500; ++i) {
        SymMat3 k = random_sym(rng, -1, 1);
        if (i % 4 == 0) {
            // force singularity: zero out the last row/column
            k.e = {k.e[0], k.e[1], 0.0, k.e[3], 0.0, 0.0};
        }
        const Vec3 u = random_vec(rng, -1, 1);
        const Vec3 v = random_vec(rng, -1, 1);
        const Mat3 hu = hat_k(k, u);
        const Mat3 hv = hat_k(k, v);
        const Mat3 commutator = hu * hv - hv * hu;
        const Mat3 expected = hat_k(k, cross_k(k, u, v));
        const double scale = std::fmax(1.0, max_abs(expected));
        CHECK(max_abs(commutator - expected) <= 1e-12 * scale);
    }
}

TEST_CASE("cholesky: identity, frozen 3x3, indefinite rejection") {
    CHECK(mat_diff_max(cholesky(SymMat3::identity()), Mat3::identity()) == 0.0);

    const SymMat3 m = SymMat3::from_upper(4, 2, 0, 5, 0, 9);
    const Mat3 l = cholesky(m);
    CHECK(l(0, 0) == 2.0);
    CHECK(l(1, 0) == 1.0);
    CHECK(l(1, 1) == 2.0);
    CHECK(l(2, 2) == 3.0);
    CHECK(l(0, 1) == 0.0);
    CHECK(l(0, 2) == 0.0);
    CHECK(l(1, 2) == 0.0);
    CHECK(l(2, 0) == 0.0);
    CHECK(l(2, 1) == 0.0);
    CHECK(mat_diff_max(l * transpose(l), m.full()) <= 1e-15);

    CHECK_THROWS_AS((void)cholesky(SymMat3::diagonal(1, -1, 1)), NotPositiveDefinite);
}

TEST_CASE("cholesky: reconstruction property on random SPD input") {
    auto rng = make_rng(107);
    for (int i = 0; i < 200; ++i) {
        const SymMat3 m = random_spd(rng, 0.1, 10.0);
        const Mat3 l = cholesky(m);
        CHECK(l(0, 1) == 0.0);
        CHECK(l(0, 2) == 0.0);
        CHECK(l(1, 2) == 0.0);
        CHECK(l(0, 0) > 0.0);
        CHECK(l(1, 1) > 0.0);
        CHECK(l(2, 2) > 0.0);
        CHECK(mat_diff_max(l * transpose(l), m.full()) <= 1e-12 * frobenius_norm(m));
    }
}

TEST_CASE("eig_sym: diagonal input, frozen spectrum, identity") {
    const SymEig d = eig_sym(SymMat3::diagonal(1, 2, 3));
    CHECK(mat_diff_max(d.rotation, Mat3::identity()) == 0.0);
    CHECK(d.eigenvalues[0] == 1.0);
    CHECK(d.eigenvalues[1] == 2.0);
    CHECK(d.eigenvalues[2] == 3.0);

    // [[0,1,0],[1,0,0],[0,0,2]] has spectrum {-1, 1, 2}.
    const SymEig s = eig_sym(SymMat3::from_upper(0, 1, 0, 0, 0, 2));
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.eigenvalues[2] == doctest::Approx(2.0).epsilon(1e-14));

    const SymEig id = eig_sym(SymMat3::identity());
    CHECK(mat_diff_max(id.rotation, Mat3::identity()) == 0.0);
    CHECK(id.eigenvalues[0] == 1.0);
    CHECK(id.eigenvalues[2] == 1.0);
}

TEST_CASE("eig_sym: diagonalization, orthogonality, unit determinant") {
    auto rng = make_rng(108);
    for (int i = 0; i < 300; ++i) {
        const SymMat3 m = random_sym(rng, -4, 4);
        const SymEig e = eig_sym(m);
        const double scale = std::fmax(1.0, frobenius_norm(m));

        const Mat3 d = transpose(e.rotation) * m.full() * e.rotation;
        CHECK(std::fabs(d(0, 1)) <= 1e-12 * scale);
        CHECK(std::fabs(d(0, 2)) <= 1e-12 * scale);
        CHECK(std::fabs(d(1, 2)) <= 1e-12 * scale);
        CHECK(e.eigenvalues[0] <= e.eigenvalues[1]);
        CHECK(e.eigenvalues[1] <= e.eigenvalues[2]);
        for (int j = 0; j < 3; ++j)
            CHECK(d(j, j) == doctest::Approx(e.eigenvalues[j]).epsilon(1e-12));

        CHECK(mat_diff_max(transpose(e.rotation) * e.rotation, Mat3::identity()) <= 1e-13);
        CHECK(std::fabs(det(e.rotation) - 1.0) <= 1e-13);
    }
}

TEST_CASE("eig_sym agrees with the characteristic-polynomial oracle") {
    auto rng = make_rng(109);
    for (int i = 0; i < 300; ++i) {
        const SymMat3 m = random_sym(rng, -4, 4);
        const SymEig e = eig_sym(m);
        const auto oracle = charpoly_eigenvalues(m);
        const double scale = std::fmax(1.0, frobenius_norm(m));
        for (int j = 0; j < 3; ++j)
            CHECK(std::fabs(e.eigenvalues[j] - oracle[j]) <= 1e-12 * scale);
    }
}

TEST_CASE("is_positive_definite: margin behavior") {
    CHECK(is_positive_definite(SymMat3::identity()));
    CHECK_FALSE(is_positive_definite(SymMat3::diagonal(1, 0, 1)));
    CHECK_FALSE(is_positive_definite(SymMat3::diagonal(1e-12, 1, 1)));
    CHECK_FALSE(is_positive_definite(SymMat3::diagonal(-1, 1, 1)));
    CHECK(is_positive_definite(SymMat3::diagonal(1e-3, 1, 1)));
}

TEST_CASE("det and inverse: frozen values and singular rejection") {
    CHECK(det(Mat3::identity()) == 1.0);
    CHECK(mat_diff_max(inverse(Mat3::identity()), Mat3::identity()) == 0.0);

    Mat3 d{};
    d(0, 0) = 2.0;
    d(1, 1) = 3.0;
    d(2, 2) = 4.0;
    CHECK(det(d) == 24.0);
    const Mat3 dinv = inverse(d);
    CHECK(dinv(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dinv(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(dinv(2, 2) == doctest::Approx(0.25).epsilon(1e-15));

    Mat3 rank2{};
    rank2.e = {1, 0, 0, 0, 1, 0, 1, 1, 0};
    CHECK_THROWS_AS((void)inverse(rank2), Singular);
}

TEST_CASE("inverse: reconstruction on random well-conditioned matrices") {
    auto rng = make_rng(110);
    int tested = 0;
    while (tested < 200) {
        Mat3 m;
        for (std::size_t i = 0; i < 9; ++i) m.e[i] = uniform(rng, -3, 3);
        const double fn = frobenius_norm(m);
        if (std::fabs(det(m)) < 1e-2 * fn * fn * fn) continue;  // skip near-singular draws
        ++tested;
        CHECK(mat_diff_max(m * inverse(m), Mat3::identity()) <= 1e-12 * std::fmax(1.0, fn));
    }
}
