#include <doctest.h>

#include <cmath>

#include "parafermion/holomorphy.hpp"

using namespace parafermion;

namespace {

const std::vector<double> kAngles = {0.3, kPi / 3, kPi / 2, 2 * kPi / 3, 2.8};

WeightVector swapped_n5(double alpha) {
    const auto w = fz_weights(5, alpha);
    const double free[] = {w[2], w[1]};
    return WeightVector::from_free(5, free);
}

}  // namespace

TEST_CASE("disorder ratio") {
    for (int n = 2; n <= 6; ++n)
        for (int q = 0; q < n; ++q) CHECK(disorder_ratio(n, 0, fz_weights(n, 1.2), q) == cplx(1.0, 0.0));
    const double x = std::tan(kPi / 8);
    const WeightVector ising({1.0, x});
    CHECK(disorder_ratio(2, 1, ising, 0).real() == doctest::Approx((1 - x) / (1 + x)).epsilon(1e-14));
    CHECK(disorder_ratio(2, 1, ising, 0).real() == doctest::Approx(x).epsilon(1e-14));  // self-duality
    const WeightVector potts({1.0, 0.3660254, 0.3660254});
    const cplx r = disorder_ratio(3, 1, potts, 0);
    CHECK(r.real() == doctest::Approx((1 - 0.3660254) / (1 + 2 * 0.3660254)).epsilon(1e-12));
    CHECK(r.real() == doctest::Approx(0.36602540).epsilon(1e-7));
    CHECK(r.imag() == 0.0);
    CHECK_THROWS_AS(disorder_ratio(2, 1, WeightVector({1.0, 1.0}), 1), SingularWeight);
}

TEST_CASE("Ising face: coefficients and residuals") {
    const auto face = canonical_rhombus(kPi / 2);
    const auto c = contour_coefficients(face, 2, 1);
    const std::array<cplx, 4> expected = {cplx(0, -1), std::polar(1.0, -3 * kPi / 4), 1.0, std::polar(1.0, 3 * kPi / 4)};
    for (std::size_t e = 0; e < 4; ++e) CHECK(std::abs(c[e] / c[2] - expected[e]) < 1e-14);

    CHECK(face_residuals(face, 2, 1, fz_weights(2, kPi / 2)).max_abs <= 1e-12);
    CHECK(face_residuals(face, 2, 1, fz_weights(2, kPi / 2).perturbed(1, 0.01)).max_abs > 1e-3);
    for (int n = 2; n <= 6; ++n) CHECK(face_residuals(canonical_rhombus(1.1, 0.4), n, 0, fz_weights(n, 0.5)).max_abs < 1e-15);
}

TEST_CASE("two critical points for N = 5") {
    const auto face = canonical_rhombus(kPi / 2);
    CHECK(face_residuals(face, 5, 1, fz_weights(5, kPi / 2)).max_abs <= 1e-12);
    CHECK(face_residuals(face, 5, 1, swapped_n5(kPi / 2)).max_abs > 1e-3);
    CHECK(face_residuals(face, 5, 2, swapped_n5(kPi / 2)).max_abs <= 1e-12);
    CHECK(face_residuals(face, 5, 2, fz_weights(5, kPi / 2)).max_abs > 1e-3);
}

TEST_CASE("critical weights are holomorphic in sector 1 for any face") {
    for (int n = 2; n <= 8; ++n)
        for (double a : {0.3, kPi / 3, kPi / 2, 2.8, -0.2, -1.0})
            for (double rot : {0.0, 0.77, -2.6, kPi}) {
                const auto face = canonical_rhombus(a, rot, {1.5, -0.3});
                const auto w = fz_weights(n, a);
                CHECK(face_residuals(face, n, 1, w).max_abs <= 1e-12);
                CHECK(face_residuals(face, n, n - 1, w).max_abs <= 1e-12);
            }
}

TEST_CASE("per-sigma residuals equal the configuration-level contour sums") {
    for (int n : {2, 3, 5})
        for (int m = 1; m < n; ++m) {
            const auto face = canonical_rhombus(1.3, 0.2);
            const auto w = fz_weights(n, 0.9);  // deliberately off-critical for this face
            const auto rep = face_residuals(face, n, m, w);
            const auto c = contour_coefficients(face, n, m);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    // mu at D2 is 1; crossing to D1 replaces s_P1 by omega^{-m} s_P1 in W
                    const cplx s1m = omega(n, static_cast<long long>(m) * a);
                    const cplx s2m = omega(n, static_cast<long long>(m) * b);
                    const double ratio = weight_eval(w, a - m - b) / weight_eval(w, a - b);
                    const cplx raw = c[0] * s1m * ratio + c[1] * s2m * ratio + c[2] * s2m + c[3] * s1m;
                    const int q = ((a - b) % n + n) % n;
                    CHECK(std::abs(std::abs(raw) - std::abs(rep.residuals[static_cast<std::size_t>(q)])) < 1e-13);
                }
        }
}

TEST_CASE("charge conjugation relates sectors m and N - m") {
    for (int n : {3, 4, 5, 6})
        for (int m = 1; m < n; ++m) {
            const auto face = canonical_rhombus(1.1, 0.4);
            const WeightVector w = fz_weights(n, 0.7).perturbed(1, 0.03);
            const auto a = face_residuals(face, n, m, w).residuals;
            const auto b = face_residuals(face, n, n - m, w).residuals;
            for (int q = 0; q < n; ++q)
                CHECK(std::abs(b[static_cast<std::size_t>(q)] - a[static_cast<std::size_t>((n - q) % n)]) < 1e-13);
        }
}

TEST_CASE("four-state Potts point separates the sectors") {
    const auto face = canonical_rhombus(kPi / 2);
    const WeightVector potts({1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(face_residuals(face, 4, 2, potts).max_abs <= 1e-12);
    CHECK(face_residuals(face, 4, 1, potts).max_abs > 1e-3);
}

TEST_CASE("translation, scaling and rotation") {
    const auto base = canonical_rhombus(1.2, 0.3);
    const auto w = fz_weights(3, 0.8);
    const auto ref = face_residuals(base, 3, 1, w);
    auto moved = base.z;
    for (auto& z : moved) z += cplx(3.0, -7.0);
    const auto t = face_residuals(make_face(base.corners, moved), 3, 1, w);
    for (int q = 0; q < 3; ++q) CHECK(std::abs(t.residuals[q] - ref.residuals[q]) < 1e-13);
    auto scaled = base.z;
    for (auto& z : scaled) z *= 2.5;
    const auto s = face_residuals(make_face(base.corners, scaled), 3, 1, w);
    for (int q = 0; q < 3; ++q) CHECK(std::abs(s.residuals[q] - 2.5 * ref.residuals[q]) < 1e-13);
    // the zero set does not depend on orientation
    for (double rot = -3.0; rot < 3.2; rot += 0.25) {
        CHECK(face_residuals(canonical_rhombus(1.2, rot), 3, 1, fz_weights(3, 1.2)).max_abs <= 1e-12);
        CHECK(face_residuals(canonical_rhombus(1.2, rot), 3, 1, w).max_abs > 1e-3);
    }
}

TEST_CASE("antiholomorphic companion") {
    const auto face = canonical_rhombus(kPi / 2);
    CHECK(antiholomorphic_residuals(face, 2, 1, fz_weights(2, kPi / 2)).max_abs <= 1e-12);
    CHECK(antiholomorphic_residuals(face, 3, 0, fz_weights(3, 1.0)).max_abs < 1e-15);
    CHECK(antiholomorphic_residuals(face, 2, 1, WeightVector({1.0, 0.6})).max_abs > 1e-3);
}

TEST_CASE("solve_weights recovers the Ising coupling") {
    for (double a : kAngles) {
        const auto sol = solve_weights(2, 1, a);
        CHECK(sol.exists);
        CHECK(sol.nullspace_dim() == 0);
        REQUIRE(sol.particular().size() == 1);
        CHECK(std::abs(sol.particular()[0] - std::tan(a / 4)) < 1e-10);
        CHECK(std::abs(sol.companion.particular[0] - std::tan((kPi - a) / 4)) < 1e-10);
    }
}

TEST_CASE("solve_weights agrees with the closed form in sector 1") {
    for (int n = 2; n <= 8; ++n)
        for (double a : kAngles) {
            const auto sol = solve_weights(n, 1, a);
            CHECK(sol.exists);
            CHECK(sol.nullspace_dim() == 0);
            const auto fz = fz_weights(n, a).free_couplings();
            for (std::size_t k = 0; k < fz.size(); ++k) CHECK(std::abs(sol.particular()[k] - fz[k]) < 1e-10);
        }
}

TEST_CASE("solve_weights: the second N = 5 critical point") {
    for (double a : kAngles) {
        const auto sol = solve_weights(5, 2, a);
        CHECK(sol.exists);
        const auto swapped = swapped_n5(a).free_couplings();
        CHECK(std::abs(sol.particular()[0] - swapped[0]) < 1e-10);
        CHECK(std::abs(sol.particular()[1] - swapped[1]) < 1e-10);
    }
}

TEST_CASE("solve_weights: the Potts line lies in the N = 4, m = 2 solution set") {
    const auto sol = solve_weights(4, 2, kPi / 2);
    CHECK(sol.exists);
    for (double x1 : {0.1, 1.0 / 3, 0.45}) CHECK(sol.contains({x1, 1 - 2 * x1}, 1e-10));
}

TEST_CASE("solve_weights validation") {
    CHECK_THROWS_AS(solve_weights(3, 0, 1.0), InvalidInput);
    CHECK_THROWS_AS(solve_weights(3, 1, 0.0), InvalidInput);
    CHECK_THROWS_AS(solve_weights(3, 3, 1.0), InvalidInput);
    // a non-rhombic face has no solution but still reports a fit
    auto z = canonical_rhombus(1.0).z;
    z[3] *= 1.1;
    const auto sol = solve_from_coefficients(contour_coefficients(z, false, 3, 1), 3, 1);
    CHECK_FALSE(sol.exists);
    CHECK(sol.residual_of_fit > 1e-4);
}

TEST_CASE("quadrilateral rigidity") {
    const auto rep = quadrilateral_rigidity_check(2, 1, {kPi / 2, 1.0}, {0.0, 0.01, 0.02, 0.05, 0.1});
    CHECK(rep.baseline_solvable);
    CHECK(rep.monotone);
    for (const auto& s : rep.samples) {
        if (s.perturbation == 0.0) CHECK(s.residual_of_fit < 1e-12);
        if (s.perturbation >= 0.05) CHECK(s.residual_of_fit > 1e-4);
        if (s.perturbation > 0.0) CHECK_FALSE(s.solvable);
    }
}

TEST_CASE("star-triangle relation") {
    const std::array<double, 3> equi = {kPi / 3, kPi / 3, kPi / 3};
    auto w = critical_star_triangle_weights(2, equi);
    CHECK(star_triangle_check(2, equi, w.star, w.tri).max_dev <= 1e-12);

    const std::array<double, 3> right = {kPi / 2, kPi / 4, kPi / 4};
    w = critical_star_triangle_weights(3, right);
    const auto ok = star_triangle_check(3, right, w.star, w.tri);
    CHECK(ok.max_dev <= 1e-12);
    CHECK(ok.ratio > 0.0);
    auto bent = w.star;
    bent[1] = bent[1].perturbed(1, 0.02);
    CHECK(star_triangle_check(3, right, bent, w.tri).max_dev > 1e-3);

    // the star edges take the complementary angle; the opposite assignment fails
    CHECK(star_triangle_check(3, right, w.tri, w.star).max_dev > 1e-3);
    CHECK_THROWS_AS(star_triangle_check(3, {1.0, 1.0, 1.0}, w.star, w.tri), InvalidInput);
}
