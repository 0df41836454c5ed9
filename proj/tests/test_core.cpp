#include <doctest.h>

#include <cmath>

#include "parafermion/core.hpp"

using namespace parafermion;

namespace {

// Ising oracle: the critical coupling solves sinh(2K) = s; the weight is x = tanh K.
double ising_x_from_sinh(double s) { return std::tanh(0.5 * std::asinh(s)); }

}  // namespace

TEST_CASE("omega evaluates roots of unity") {
    CHECK(omega(4, 0) == cplx(1.0, 0.0));
    CHECK(omega(4, 1) == cplx(0.0, 1.0));
    CHECK(std::abs(omega(3, 2) - std::conj(omega(3, 1))) < 1e-15);
    for (int n = 2; n <= 9; ++n)
        for (long long q = -12; q <= 12; ++q) {
            CHECK(std::abs(omega(n, q) - omega(n, q + n)) < 1e-15);
            CHECK(std::abs(std::abs(omega(n, q)) - 1.0) < 1e-15);
        }
    CHECK_THROWS_AS(omega(1, 0), InvalidInput);
}

TEST_CASE("cyclic values and sectors") {
    const CyclicValue a(5, 7);
    CHECK(a.residue() == 2);
    CHECK((a * CyclicValue(5, 4)).residue() == 1);
    CHECK(a.conj().residue() == 3);
    CHECK(std::abs(a.value() - omega(5, 2)) < 1e-15);
    CHECK_THROWS_AS(CyclicValue(5, 1) * CyclicValue(4, 1), InvalidInput);
    CHECK(SectorIndex(5, 2).conjugate().value() == 3);
    CHECK(SectorIndex(5, 0).conjugate().value() == 0);
    CHECK_THROWS_AS(SectorIndex(5, 5), InvalidInput);
    CHECK_THROWS_AS(SectorIndex(5, -1), InvalidInput);
}

TEST_CASE("weight vector construction enforces normalisation and reflection") {
    CHECK_THROWS_AS(WeightVector({0.9, 0.2}), InvalidInput);
    CHECK_THROWS_AS(WeightVector({1.0, 0.2, 0.3}), InvalidInput);
    const WeightVector w({1.0, 0.2, 0.2});
    CHECK(w.free_couplings() == std::vector<double>{0.2});
    const double free[] = {0.4, 0.1};
    const auto v = WeightVector::from_free(5, free);
    CHECK(v.coefficients() == std::vector<double>{1.0, 0.4, 0.1, 0.1, 0.4});
    const auto p = v.perturbed(1, 0.05);
    CHECK(p[1] == doctest::Approx(0.45));
    CHECK(p[4] == doctest::Approx(0.45));
    CHECK(WeightVector::trivial(4).coefficients() == std::vector<double>{1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("critical weights: Ising values") {
    CHECK(fz_weights(2, kPi / 2)[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
    for (double a : {0.3, 1.0, kPi / 3, 2.0, 2.8}) CHECK(fz_weights(2, a)[1] == doctest::Approx(std::tan(a / 4)).epsilon(1e-13));
    // square, triangular, honeycomb against the sinh(2K) oracle
    CHECK(std::abs(fz_weights(2, kPi / 2)[1] - ising_x_from_sinh(1.0)) < 1e-12);
    CHECK(std::abs(fz_weights(2, kPi / 3)[1] - ising_x_from_sinh(1.0 / std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(fz_weights(2, 2 * kPi / 3)[1] - ising_x_from_sinh(std::sqrt(3.0))) < 1e-12);
    CHECK(fz_weights(2, kPi / 3)[1] == doctest::Approx(0.26794919).epsilon(1e-8));
}

TEST_CASE("critical weights: N = 3 and N = 4") {
    // Three-state Potts self-dual coupling 1/(1 + sqrt 3).
    const auto w3 = fz_weights(3, kPi / 2);
    CHECK(std::abs(w3[1] - 1.0 / (1.0 + std::sqrt(3.0))) < 1e-12);
    CHECK(w3[1] == doctest::Approx(w3[2]));
    const auto w4 = fz_weights(4, kPi / 2);
    CHECK(w4[1] == doctest::Approx(0.351153).epsilon(1e-6));
    CHECK(w4[2] == doctest::Approx(0.297693).epsilon(1e-6));
    CHECK(std::abs(2 * w4[1] + w4[2] - 1.0) < 1e-12);
}

TEST_CASE("critical weights reject bad angles") {
    CHECK_THROWS_AS(fz_weights(2, 0.0), InvalidInput);
    CHECK_THROWS_AS(fz_weights(3, kPi), InvalidInput);
    CHECK_THROWS_AS(fz_weights(3, -4.0), InvalidInput);
    CHECK_THROWS_AS(fz_weights(1, 1.0), InvalidInput);
}

TEST_CASE("critical weights: reflection symmetry and positivity") {
    for (int n = 2; n <= 8; ++n) {
        for (int i = 1; i < 200; ++i) {
            const double a = kPi * i / 200.0;
            // Raw product, independent of the symmetrising constructor.
            std::vector<double> raw(static_cast<std::size_t>(n), 1.0);
            for (int k = 1; k < n; ++k) {
                double p = 1.0;
                for (int j = 0; j < k; ++j)
                    p *= std::sin(kPi * j / n + a / (2.0 * n)) / std::sin(kPi * (j + 1) / n - a / (2.0 * n));
                raw[static_cast<std::size_t>(k)] = p;
            }
            for (int k = 1; k < n; ++k) {
                CHECK(std::abs(raw[static_cast<std::size_t>(k)] - raw[static_cast<std::size_t>(n - k)]) < 1e-12);
                CHECK(raw[static_cast<std::size_t>(k)] > 0.0);
            }
        }
        for (double a : {-kPi / 6, -0.3, -0.05}) {
            const auto w = fz_weights(n, a);
            for (int q = 0; q < n; ++q) CHECK(weight_eval(w, q) > 0.0);
        }
    }
}

TEST_CASE("reference values are exact rationals") {
    CHECK(conformal_spin(2, 1) == Rational(1, 2));
    CHECK(conformal_spin(5, 1) == Rational(4, 5));
    CHECK(conformal_spin(5, 2) == Rational(6, 5));
    CHECK(conformal_spin(7, 0) == Rational(0));
    for (int n = 2; n <= 12; ++n)
        for (int m = 0; m < n; ++m) CHECK(conformal_spin(n, m) == conformal_spin(n, (n - m) % n));
    CHECK(central_charge(2) == Rational(1, 2));
    CHECK(central_charge(3) == Rational(4, 5));
    CHECK(central_charge(6) == Rational(5, 4));
}

TEST_CASE("weight evaluation") {
    const WeightVector ising({1.0, std::tan(kPi / 8)});
    CHECK(weight_eval(ising, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (int n = 2; n <= 6; ++n)
        for (int q = -3; q < 9; ++q) CHECK(weight_eval(WeightVector::trivial(n), q) == doctest::Approx(1.0));
    const WeightVector w3({1.0, 0.3660254, 0.3660254});
    CHECK(weight_eval(w3, 1) == doctest::Approx(0.6339746).epsilon(1e-12));
    // imaginary part stays at rounding level
    for (int n = 2; n <= 8; ++n) {
        const auto w = fz_weights(n, 1.1);
        double scale = 0.0;
        for (double x : w.coefficients()) scale += std::abs(x);
        for (int q = 0; q < n; ++q) {
            cplx z = 0.0;
            for (int k = 0; k < n; ++k) z += w[k] * omega(n, static_cast<long long>(q) * k);
            CHECK(std::abs(z.imag()) <= 1e-14 * scale);
            CHECK(std::abs(weight_eval_at(w, omega(n, q)) - z) < 1e-14);
        }
    }
}
