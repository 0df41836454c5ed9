#include "parafermion/holomorphy.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace parafermion {

namespace {

void require_sector(int n, int m) { (void)SectorIndex(n, m); }

}  // namespace

cplx disorder_ratio(int n, int m, const WeightVector& w, long long q) {
    require_sector(n, m);
    if (w.modulus() != n) throw InvalidInput("weight vector modulus differs from N");
    const double den = weight_eval(w, q);
    double scale = 0.0;
    for (double x : w.coefficients()) scale += std::abs(x);
    if (std::abs(den) <= 1e-14 * scale) {
        throw SingularWeight("singular weight: W(omega^" + std::to_string(q) + ") vanishes");
    }
    return {weight_eval(w, q - m) / den, 0.0};
}

std::array<cplx, 4> contour_coefficients(const std::array<cplx, 4>& z, bool folded, int n, int m, bool anti) {
    require_sector(n, m);
    const double p = to_double(conformal_spin(n, m));
    const double spin = anti ? p - 2.0 : p;
    const cplx d = (folded ? -1.0 : 1.0) * (z[3] - z[1]);
    if (std::abs(d) == 0.0) throw InvalidInput("degenerate face: coincident dual corners");
    const double base = std::arg(d);
    auto phase = [&](cplx from, cplx to) {
        const double theta = base + std::arg((to - from) / d);
        return std::polar(1.0, -spin * theta);
    };
    auto inc = [anti](cplx dz) { return anti ? std::conj(dz) : dz; };
    const cplx p1 = z[0], d1 = z[1], p2 = z[2], d2 = z[3];
    return {phase(p1, d1) * inc(d1 - p1), phase(p2, d1) * inc(p2 - d1), phase(p2, d2) * inc(d2 - p2),
            phase(p1, d2) * inc(p1 - d2)};
}

std::array<cplx, 4> contour_coefficients(const RhombusGeometry& rh, int n, int m, bool anti) {
    return contour_coefficients(rh.z, rh.folded(), n, m, anti);
}

std::vector<cplx> residuals_from_coefficients(const std::array<cplx, 4>& c, int n, int m, const WeightVector& w) {
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        const cplx sm = omega(n, static_cast<long long>(q) * m);
        const cplx r = disorder_ratio(n, m, w, q);
        out[static_cast<std::size_t>(q)] = c[0] * sm * r + c[1] * r + c[2] + c[3] * sm;
    }
    return out;
}

namespace {

ResidualReport make_report(const RhombusGeometry& rh, int n, int m, const WeightVector& w, bool anti) {
    if (w.modulus() != n) throw InvalidInput("weight vector modulus differs from N");
    ResidualReport rep;
    rep.n = n;
    rep.m = m;
    rep.antiholomorphic = anti;
    rep.weights_used = w;
    rep.rhombus = rh;
    rep.residuals = residuals_from_coefficients(contour_coefficients(rh, n, m, anti), n, m, w);
    for (const cplx& r : rep.residuals) rep.max_abs = std::max(rep.max_abs, std::abs(r));
    return rep;
}

}  // namespace

ResidualReport face_residuals(const RhombusGeometry& rh, int n, int m, const WeightVector& w_edge) {
    return make_report(rh, n, m, w_edge, false);
}

ResidualReport antiholomorphic_residuals(const RhombusGeometry& rh, int n, int m, const WeightVector& w_edge) {
    return make_report(rh, n, m, w_edge, true);
}

OrientationSolution solve_from_coefficients(const std::array<cplx, 4>& c, int n, int m, const SolverOptions& opt) {
    require_sector(n, m);
    const int h = n / 2;
    // Cleared condition (c_a s^m + c_b) sum_k x_k w^{-mk} s^k + (c_c + c_d s^m) sum_k x_k s^k = 0.
    Eigen::MatrixXd a(2 * n, h);
    Eigen::VectorXd b(2 * n);
    for (int q = 0; q < n; ++q) {
        const cplx sm = omega(n, static_cast<long long>(q) * m);
        const cplx f = c[0] * sm + c[1];
        const cplx g = c[2] + c[3] * sm;
        auto coef = [&](int k) {
            return f * omega(n, static_cast<long long>(q - m) * k) + g * omega(n, static_cast<long long>(q) * k);
        };
        for (int j = 1; j <= h; ++j) {
            cplx col = coef(j);
            if (n - j != j) col += coef(n - j);
            a(q, j - 1) = col.real();
            a(n + q, j - 1) = col.imag();
        }
        const cplx rhs = -coef(0);
        b(q) = rhs.real();
        b(n + q) = rhs.imag();
    }

    OrientationSolution sol;
    sol.system_norm = std::sqrt(a.squaredNorm() + b.squaredNorm());
    // An identically vanishing system shows up as rounding noise; measure against the
    // natural size of the coefficients rather than the (possibly zero) matrix.
    double cscale = 0.0;
    for (const cplx& ci : c) cscale += std::abs(ci);
    cscale *= std::sqrt(2.0 * n);
    const double scale = std::max(sol.system_norm, cscale);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > opt.singular_tol * std::max(smax, cscale)) ++rank;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(h);
    for (int i = 0; i < rank; ++i) {
        x += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(b) / s(i));
    }
    sol.particular.assign(x.data(), x.data() + h);
    for (int i = rank; i < h; ++i) {
        const Eigen::VectorXd v = svd.matrixV().col(i);
        sol.null_basis.emplace_back(v.data(), v.data() + h);
    }
    sol.nullspace_dim = h - rank;
    sol.residual_of_fit = (a * x - b).norm();
    sol.exists = sol.residual_of_fit <= opt.fit_tol * scale;

    if (sol.exists) {
        // Clearing denominators can admit points where W vanishes; check directly.
        try {
            const WeightVector w = WeightVector::from_free(n, sol.particular);
            double worst = 0.0;
            for (const cplx& r : residuals_from_coefficients(c, n, m, w)) worst = std::max(worst, std::abs(r));
            if (worst > opt.validate_tol * std::max(1.0, cscale)) sol.exists = false;
        } catch (const SingularWeight&) {
            // Evaluation undefined at this point; the nullspace may still hold valid points.
        }
    }
    return sol;
}

OrientationSolution solve_weights_for_face(const RhombusGeometry& rh, int n, int m, const SolverOptions& opt) {
    OrientationSolution sol = solve_from_coefficients(contour_coefficients(rh, n, m), n, m, opt);
    sol.alpha = rh.alpha;
    return sol;
}

bool WeightSolution::contains(const std::vector<double>& free, double tol) const {
    if (free.size() != primary.particular.size()) return false;
    std::vector<double> d(free.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = free[i] - primary.particular[i];
    for (const auto& v : primary.null_basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) dot += d[i] * v[i];
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= dot * v[i];
    }
    double norm = 0.0;
    for (double e : d) norm += e * e;
    return primary.exists && std::sqrt(norm) <= tol;
}

WeightSolution solve_weights(int n, int m, double alpha, bool joint, const SolverOptions& opt) {
    require_sector(n, m);
    if (m == 0) throw InvalidInput("sector m=0 imposes no condition on the weights");
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= kPi) {
        throw InvalidInput("invalid angle: solve_weights needs 0 < alpha < pi");
    }
    WeightSolution ws;
    ws.n = n;
    ws.m = m;
    ws.alpha = alpha;
    ws.joint = joint;
    ws.primary = solve_weights_for_face(canonical_rhombus(alpha), n, m, opt);
    ws.companion = solve_weights_for_face(canonical_rhombus(kPi - alpha), n, m, opt);
    ws.exists = ws.primary.exists && (!joint || ws.companion.exists);
    return ws;
}

RigidityReport quadrilateral_rigidity_check(int n, int m, const std::vector<double>& alpha_grid,
                                            const std::vector<double>& perturbations, const SolverOptions& opt) {
    require_sector(n, m);
    RigidityReport rep;
    rep.n = n;
    rep.m = m;
    rep.baseline_solvable = true;
    rep.monotone = true;
    std::vector<double> eps = perturbations;
    std::sort(eps.begin(), eps.end());
    for (double alpha : alpha_grid) {
        double previous = -1.0;
        for (double e : eps) {
            double sq = 0.0;
            bool solvable = true;
            for (double a : {alpha, kPi - alpha}) {
                auto z = canonical_rhombus(a).z;
                z[3] *= 1.0 + e;  // D2 pushed along the dual diagonal; sides become unequal
                const auto sol = solve_from_coefficients(contour_coefficients(z, false, n, m), n, m, opt);
                sq += sol.residual_of_fit * sol.residual_of_fit;
                solvable = solvable && sol.exists;
            }
            const double r = std::sqrt(sq);
            rep.samples.push_back({alpha, e, r, solvable});
            if (e == 0.0 && !solvable) rep.baseline_solvable = false;
            if (r + 1e-15 < previous) rep.monotone = false;
            previous = r;
        }
    }
    return rep;
}

StarTriangleWeights critical_star_triangle_weights(int n, const std::array<double, 3>& alphas) {
    StarTriangleWeights w;
    for (std::size_t i = 0; i < 3; ++i) {
        w.star[i] = fz_weights(n, kPi - alphas[i]);
        w.tri[i] = fz_weights(n, alphas[i]);
    }
    return w;
}

StarTriangleResult star_triangle_check(int n, const std::array<double, 3>& alphas,
                                       const std::array<WeightVector, 3>& w_star,
                                       const std::array<WeightVector, 3>& w_tri) {
    require_modulus(n);
    if (std::abs(alphas[0] + alphas[1] + alphas[2] - kPi) > 1e-9) {
        throw InvalidInput("star-triangle angles must sum to pi");
    }
    for (std::size_t i = 0; i < 3; ++i)
        if (w_star[i].modulus() != n || w_tri[i].modulus() != n)
            throw InvalidInput("weight vector modulus differs from N");

    // Tabulate W(q) once per weight.
    auto table = [n](const WeightVector& w) {
        std::vector<double> t(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) t[static_cast<std::size_t>(q)] = weight_eval(w, q);
        return t;
    };
    std::array<std::vector<double>, 3> ws, wt;
    for (std::size_t i = 0; i < 3; ++i) {
        ws[i] = table(w_star[i]);
        wt[i] = table(w_tri[i]);
    }
    auto at = [n](const std::vector<double>& t, int q) { return t[static_cast<std::size_t>(((q % n) + n) % n)]; };

    const auto count = static_cast<std::size_t>(n) * n * n;
    std::vector<double> d(count), t(count);
    std::size_t idx = 0;
    for (int s1 = 0; s1 < n; ++s1)
        for (int s2 = 0; s2 < n; ++s2)
            for (int s3 = 0; s3 < n; ++s3, ++idx) {
                double sum = 0.0;
                for (int s0 = 0; s0 < n; ++s0)
                    sum += at(ws[0], s1 - s0) * at(ws[1], s2 - s0) * at(ws[2], s3 - s0);
                d[idx] = sum;
                t[idx] = at(wt[0], s2 - s3) * at(wt[1], s1 - s3) * at(wt[2], s1 - s2);
                if (t[idx] == 0.0) throw SingularWeight("singular configuration: triangle weight vanishes");
            }
    StarTriangleResult res;
    double dmax = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        res.ratio += d[i] / t[i];
        dmax = std::max(dmax, std::abs(d[i]));
    }
    res.ratio /= static_cast<double>(count);
    double dev = 0.0;
    for (std::size_t i = 0; i < count; ++i) dev = std::max(dev, std::abs(d[i] - res.ratio * t[i]));
    res.max_dev = dmax > 0.0 ? dev / dmax : dev;
    return res;
}

}  // namespace parafermion
