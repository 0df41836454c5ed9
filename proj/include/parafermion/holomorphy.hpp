#pragma once

#include <array>
#include <optional>
#include <vector>

#include "parafermion/core.hpp"
#include "parafermion/geometry.hpp"

namespace parafermion {

/// R_m(sigma) = W(omega^{-m} sigma) / W(sigma) at sigma = omega^q. Real by the
/// reflection symmetry of the couplings; returned as complex for uniformity.
cplx disorder_ratio(int n, int m, const WeightVector& w, long long q);

/// Face coefficients (c_a, c_b, c_c, c_d) of the contour sum divided by s_P2^m mu_D2:
///   residual(q) = c_a sigma^m R + c_b R + c_c + c_d sigma^m.
/// c_e = e^{-i p_m theta_e} dz_e, with the edge angles lifted relative to the string
/// direction so the zero set does not depend on where the [-pi, pi) cut falls.
/// `anti` gives the antiholomorphic contract e^{-i(p_m - 2) theta} conj(dz).
std::array<cplx, 4> contour_coefficients(const std::array<cplx, 4>& z, bool folded, int n, int m,
                                         bool anti = false);
std::array<cplx, 4> contour_coefficients(const RhombusGeometry& rh, int n, int m, bool anti = false);

/// Evaluates the four-term residual for all q given precomputed coefficients.
std::vector<cplx> residuals_from_coefficients(const std::array<cplx, 4>& c, int n, int m,
                                              const WeightVector& w);

struct ResidualReport {
    int n = 0;
    int m = 0;
    bool antiholomorphic = false;
    std::vector<cplx> residuals;  // indexed by q, sigma = omega^q
    double max_abs = 0.0;
    WeightVector weights_used;
    RhombusGeometry rhombus;
};

ResidualReport face_residuals(const RhombusGeometry& rh, int n, int m, const WeightVector& w_edge);
ResidualReport antiholomorphic_residuals(const RhombusGeometry& rh, int n, int m,
                                         const WeightVector& w_edge);

/// Solution of the cleared linear system for one face orientation, in the free
/// couplings x_1..x_{floor(N/2)}.
struct OrientationSolution {
    double alpha = 0.0;
    std::vector<double> particular;               // least-squares (minimum norm) solution
    std::vector<std::vector<double>> null_basis;  // orthonormal
    int nullspace_dim = 0;
    double residual_of_fit = 0.0;
    double system_norm = 0.0;
    bool exists = false;
};

struct SolverOptions {
    double fit_tol = 1e-10;       // residual <= fit_tol * system norm
    double singular_tol = 1e-10;  // relative singular value cutoff
    double validate_tol = 1e-8;   // direct residual check of the particular solution
};

/// Linear system for an arbitrary quadrilateral given its coefficients.
OrientationSolution solve_from_coefficients(const std::array<cplx, 4>& c, int n, int m,
                                            const SolverOptions& opt = {});
OrientationSolution solve_weights_for_face(const RhombusGeometry& rh, int n, int m,
                                           const SolverOptions& opt = {});

struct WeightSolution {
    int n = 0;
    int m = 0;
    double alpha = 0.0;
    bool joint = true;
    OrientationSolution primary;    // the alpha-face
    OrientationSolution companion;  // the (pi - alpha)-face
    bool exists = false;

    const std::vector<double>& particular() const { return primary.particular; }
    int nullspace_dim() const { return primary.nullspace_dim; }
    double residual_of_fit() const { return primary.residual_of_fit; }
    /// Whether the free couplings lie in the primary affine solution set to `tol`.
    bool contains(const std::vector<double>& free, double tol) const;
};

/// Solves holomorphicity for the couplings. With `joint` both orientations must be
/// solvable; they involve different edge weights and decouple into two blocks.
WeightSolution solve_weights(int n, int m, double alpha, bool joint = true, const SolverOptions& opt = {});

struct RigiditySample {
    double alpha = 0.0;
    double perturbation = 0.0;
    double residual_of_fit = 0.0;
    bool solvable = false;
};

struct RigidityReport {
    int n = 0;
    int m = 0;
    std::vector<RigiditySample> samples;
    bool baseline_solvable = false;  // every zero-perturbation sample solvable
    bool monotone = false;           // residual nondecreasing in the perturbation, per alpha
};

/// Pushes D2 outwards by a relative amount eps on both orientations (unequal sides,
/// closed quadrilateral) and reports the combined least-squares residual.
RigidityReport quadrilateral_rigidity_check(int n, int m, const std::vector<double>& alpha_grid,
                                            const std::vector<double>& perturbations,
                                            const SolverOptions& opt = {});

struct StarTriangleResult {
    double ratio = 0.0;
    double max_dev = 0.0;
};

struct StarTriangleWeights {
    std::array<WeightVector, 3> star;
    std::array<WeightVector, 3> tri;
};

/// Critical couplings for angles summing to pi: the star edge to s_i carries
/// fz(pi - alpha_i) and the triangle edge opposite s_i carries fz(alpha_i).
StarTriangleWeights critical_star_triangle_weights(int n, const std::array<double, 3>& alphas);

/// D(s1,s2,s3) = sum_{s0} W1(s1 s0*) W2(s2 s0*) W3(s3 s0*) against
/// T = W~1(s2 s3*) W~2(s1 s3*) W~3(s1 s2*); ratio = mean(D/T),
/// max_dev = max|D - ratio T| / max|D|.
StarTriangleResult star_triangle_check(int n, const std::array<double, 3>& alphas,
                                       const std::array<WeightVector, 3>& w_star,
                                       const std::array<WeightVector, 3>& w_tri);

}  // namespace parafermion
