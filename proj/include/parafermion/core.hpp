#pragma once

#include <complex>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "parafermion/errors.hpp"

namespace parafermion {

using cplx = std::complex<double>;
using Rational = boost::rational<long long>;

inline constexpr double kPi = 3.14159265358979323846;

// Default absolute tolerance for construction and consistency checks.
inline constexpr double kConsistencyTol = 1e-12;

void require_modulus(int n);

/// e^{2 pi i q / n}, periodic in q.
cplx omega(int n, long long q);

/// An element of Z_N stored as its residue q in [0, n).
class CyclicValue {
public:
    CyclicValue(int n, long long q);

    int modulus() const { return n_; }
    int residue() const { return q_; }
    cplx value() const { return omega(n_, q_); }

    CyclicValue operator*(const CyclicValue& other) const;
    CyclicValue conj() const;

private:
    int n_;
    int q_;
};

/// Charge sector m in [0, n-1].
class SectorIndex {
public:
    SectorIndex(int n, int m);

    int modulus() const { return n_; }
    int value() const { return m_; }
    SectorIndex conjugate() const { return {n_, (n_ - m_) % n_}; }

private:
    int n_;
    int m_;
};

/// Couplings x_0..x_{N-1} of one nearest-neighbour weight
/// W(s, s') = sum_k x_k (s s'*)^k.
///
/// Construction enforces x_0 = 1 and x_k = x_{N-k} to `tol`; the stored vector is
/// symmetrised exactly so that evaluation is real to rounding.
class WeightVector {
public:
    /// Decoupled N=2 weight; placeholder for default-constructed reports.
    WeightVector() : x_{1.0, 0.0} {}
    WeightVector(std::vector<double> x, double tol = kConsistencyTol);

    /// Builds the full vector from the floor(N/2) free couplings x_1..x_{N/2}.
    static WeightVector from_free(int n, std::span<const double> free);

    /// Couplings with x_k = 0 for k >= 1 (decoupled spins).
    static WeightVector trivial(int n);

    int modulus() const { return static_cast<int>(x_.size()); }
    double operator[](int k) const { return x_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& coefficients() const { return x_; }

    /// x_1..x_{floor(N/2)}.
    std::vector<double> free_couplings() const;

    /// Copy with x_k and x_{N-k} shifted by delta.
    WeightVector perturbed(int k, double delta) const;

private:
    std::vector<double> x_;
};

/// Isoradial critical weights x_k = prod_{j<k} sin(pi j/N + a/2N) / sin(pi(j+1)/N - a/2N).
/// Valid for alpha in (-pi, pi) \ {0}; alpha = pi/2 is the isotropic square lattice.
WeightVector fz_weights(int n, double alpha);

/// Conformal spin p_m = m(N-m)/N.
Rational conformal_spin(int n, int m);

/// Central charge c = 2(N-1)/(N+2) of the Z_N parafermion theory.
Rational central_charge(int n);

/// W evaluated at s s'* = omega^q. Throws if the imaginary part is not negligible.
double weight_eval(const WeightVector& w, long long q);

/// Same sum for an arbitrary complex argument z; no reality check.
cplx weight_eval_at(const WeightVector& w, cplx z);

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace parafermion
