#include "parafermion/core.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace parafermion {

namespace {

long long mod(long long q, int n) {
    const long long r = q % n;
    return r < 0 ? r + n : r;
}

}  // namespace

void require_modulus(int n) {
    if (n < 2) {
        throw InvalidInput("invalid modulus N=" + std::to_string(n) + " (need N >= 2)");
    }
}

cplx omega(int n, long long q) {
    require_modulus(n);
    const long long r = mod(q, n);
    // Exact values on the axes keep quarter turns free of rounding noise.
    if (r == 0) return {1.0, 0.0};
    if (2 * r == n) return {-1.0, 0.0};
    if (4 * r == n) return {0.0, 1.0};
    if (4 * r == 3LL * n) return {0.0, -1.0};
    const double phase = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(phase), std::sin(phase)};
}

CyclicValue::CyclicValue(int n, long long q) : n_(n), q_(0) {
    require_modulus(n);
    q_ = static_cast<int>(mod(q, n));
}

CyclicValue CyclicValue::operator*(const CyclicValue& other) const {
    if (other.n_ != n_) throw InvalidInput("cyclic values with different moduli");
    return {n_, static_cast<long long>(q_) + other.q_};
}

CyclicValue CyclicValue::conj() const { return {n_, -static_cast<long long>(q_)}; }

SectorIndex::SectorIndex(int n, int m) : n_(n), m_(m) {
    require_modulus(n);
    if (m < 0 || m >= n) {
        throw InvalidInput("sector m=" + std::to_string(m) + " outside [0, " +
                           std::to_string(n - 1) + "]");
    }
}

WeightVector::WeightVector(std::vector<double> x, double tol) : x_(std::move(x)) {
    const int n = static_cast<int>(x_.size());
    require_modulus(n);
    if (std::abs(x_[0] - 1.0) > tol) {
        throw InvalidInput("weight vector must have x_0 = 1, got " + std::to_string(x_[0]));
    }
    for (int k = 1; k < n; ++k) {
        if (!std::isfinite(x_[static_cast<std::size_t>(k)])) {
            throw InvalidInput("weight vector has a non-finite coupling");
        }
        const double a = x_[static_cast<std::size_t>(k)];
        const double b = x_[static_cast<std::size_t>(n - k)];
        if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) {
            throw InvalidInput("weight vector violates x_k = x_{N-k} at k=" + std::to_string(k));
        }
    }
    x_[0] = 1.0;
    for (int k = 1; 2 * k < n; ++k) {
        const double avg = 0.5 * (x_[static_cast<std::size_t>(k)] + x_[static_cast<std::size_t>(n - k)]);
        x_[static_cast<std::size_t>(k)] = avg;
        x_[static_cast<std::size_t>(n - k)] = avg;
    }
}

WeightVector WeightVector::from_free(int n, std::span<const double> free) {
    require_modulus(n);
    const auto h = static_cast<std::size_t>(n / 2);
    if (free.size() != h) {
        throw InvalidInput("expected " + std::to_string(h) + " free couplings for N=" +
                           std::to_string(n) + ", got " + std::to_string(free.size()));
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[0] = 1.0;
    for (std::size_t k = 1; k <= h; ++k) {
        x[k] = free[k - 1];
        x[static_cast<std::size_t>(n) - k] = free[k - 1];
    }
    return WeightVector(std::move(x));
}

WeightVector WeightVector::trivial(int n) {
    require_modulus(n);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    x[0] = 1.0;
    return WeightVector(std::move(x));
}

std::vector<double> WeightVector::free_couplings() const {
    const int n = modulus();
    return {x_.begin() + 1, x_.begin() + 1 + n / 2};
}

WeightVector WeightVector::perturbed(int k, double delta) const {
    const int n = modulus();
    if (k < 1 || k >= n) throw InvalidInput("perturbation index out of range");
    std::vector<double> x = x_;
    x[static_cast<std::size_t>(k)] += delta;
    if (n - k != k) x[static_cast<std::size_t>(n - k)] += delta;
    return WeightVector(std::move(x));
}

WeightVector fz_weights(int n, double alpha) {
    require_modulus(n);
    if (!std::isfinite(alpha) || std::abs(alpha) >= kPi) {
        throw InvalidInput("invalid angle: alpha must lie in (-pi, pi), got " + std::to_string(alpha));
    }
    if (alpha == 0.0) {
        throw InvalidInput("invalid angle: alpha = 0 is a degenerate rhombus");
    }
    const double nd = static_cast<double>(n);
    std::vector<double> x(static_cast<std::size_t>(n), 1.0);
    double product = 1.0;
    for (int k = 1; k < n; ++k) {
        const int j = k - 1;
        const double num = std::sin(kPi * j / nd + alpha / (2.0 * nd));
        const double den = std::sin(kPi * (j + 1) / nd - alpha / (2.0 * nd));
        if (std::abs(den) < 1e-300) {
            throw SingularWeight("singular angle: vanishing denominator in critical weights");
        }
        product *= num / den;
        x[static_cast<std::size_t>(k)] = product;
    }
    // The closed form is symmetric for every alpha in (-pi, pi); a loose tolerance
    // absorbs the rounding of the two independent products.
    return WeightVector(std::move(x), 1e-9);
}

Rational conformal_spin(int n, int m) {
    const SectorIndex sector(n, m);
    return Rational(static_cast<long long>(sector.value()) * (n - sector.value()), n);
}

Rational central_charge(int n) {
    require_modulus(n);
    return Rational(2LL * (n - 1), n + 2);
}

cplx weight_eval_at(const WeightVector& w, cplx z) {
    cplx acc = 0.0;
    cplx power = 1.0;
    for (int k = 0; k < w.modulus(); ++k) {
        acc += w[k] * power;
        power *= z;
    }
    return acc;
}

double weight_eval(const WeightVector& w, long long q) {
    const int n = w.modulus();
    cplx acc = 0.0;
    double scale = 0.0;
    for (int k = 0; k < n; ++k) {
        acc += w[k] * omega(n, q * k);
        scale += std::abs(w[k]);
    }
    if (std::abs(acc.imag()) > 1e-12 * scale) {
        throw InvalidInput("inconsistent weight vector: W has imaginary part " +
                           std::to_string(acc.imag()));
    }
    return acc.real();
}

}  // namespace parafermion
