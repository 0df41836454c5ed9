#include "parafermion/report.hpp"

#include <iomanip>
#include <sstream>

namespace parafermion {

using nlohmann::json;

json complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const RhombusGeometry& rh) {
    json z = json::array();
    for (const cplx& c : rh.z) z.push_back(complex_json(c));
    return {{"corners", rh.corners}, {"z", z}, {"alpha", rh.alpha}, {"folded", rh.folded()},
            {"edge_thetas", rh.edge_thetas}};
}

json to_json(const ResidualReport& rep) {
    json res = json::array();
    for (const cplx& r : rep.residuals) res.push_back(complex_json(r));
    return {{"N", rep.n},
            {"m", rep.m},
            {"antiholomorphic", rep.antiholomorphic},
            {"residuals", res},
            {"max_abs", rep.max_abs},
            {"weights_used", rep.weights_used.coefficients()},
            {"rhombus", to_json(rep.rhombus)}};
}

json to_json(const OrientationSolution& sol) {
    return {{"alpha", sol.alpha},
            {"particular", sol.particular},
            {"null_basis", sol.null_basis},
            {"nullspace_dim", sol.nullspace_dim},
            {"residual_of_fit", sol.residual_of_fit},
            {"system_norm", sol.system_norm},
            {"exists", sol.exists}};
}

json to_json(const WeightSolution& sol) {
    json solutions = json::array();
    if (sol.primary.exists) {
        solutions.push_back(sol.primary.particular);
        for (const auto& v : sol.primary.null_basis) solutions.push_back(v);
    }
    return {{"N", sol.n},
            {"m", sol.m},
            {"alpha", sol.alpha},
            {"joint", sol.joint},
            {"solutions", solutions},
            {"nullspace_dim", sol.nullspace_dim()},
            {"residual_of_fit", sol.residual_of_fit()},
            {"exists", sol.exists},
            {"primary", to_json(sol.primary)},
            {"companion", to_json(sol.companion)}};
}

json to_json(const RigidityReport& rep) {
    json rows = json::array();
    for (const auto& s : rep.samples)
        rows.push_back({{"alpha", s.alpha},
                        {"perturbation", s.perturbation},
                        {"residual_of_fit", s.residual_of_fit},
                        {"solvable", s.solvable}});
    return {{"N", rep.n}, {"m", rep.m}, {"samples", rows}, {"baseline_solvable", rep.baseline_solvable},
            {"monotone", rep.monotone}};
}

json to_json(const StarTriangleResult& res) { return {{"ratio", res.ratio}, {"max_dev", res.max_dev}}; }

json to_json(const CorrelatorResult& res) {
    return {{"value", complex_json(res.value)}, {"Z", res.z}, {"config_count", res.config_count},
            {"charge_neutral", res.charge_neutral}};
}

json to_json(const FaceSumResult& res) {
    json terms = json::array();
    for (const cplx& t : res.terms) terms.push_back(complex_json(t));
    return {{"face", res.face},
            {"m", res.m},
            {"interior", res.interior},
            {"corners", res.oriented.corners},
            {"tail", res.tail},
            {"terms", terms},
            {"residual", complex_json(res.residual)},
            {"abs_residual", std::abs(res.residual)},
            {"scale", res.scale},
            {"relative", res.relative},
            {"config_count", res.config_count}};
}

json to_json(const IdentityResult& res) {
    return {{"max_relative", res.max_relative}, {"config_count", res.config_count}};
}

json to_json(const PathIndependenceResult& res) {
    return {{"value_a", complex_json(res.value_a)},
            {"value_b", complex_json(res.value_b)},
            {"gauge", res.gauge},
            {"deviation", res.deviation},
            {"neutral", res.neutral}};
}

std::string to_csv(const ResidualReport& rep) {
    std::ostringstream os;
    os << std::setprecision(17) << "q,re,im,abs\n";
    for (std::size_t q = 0; q < rep.residuals.size(); ++q) {
        const cplx r = rep.residuals[q];
        os << q << ',' << r.real() << ',' << r.imag() << ',' << std::abs(r) << '\n';
    }
    return os.str();
}

std::string to_csv(const WeightSolution& sol) {
    std::ostringstream os;
    os << std::setprecision(17) << "orientation,vector,k,value\n";
    auto emit = [&](const char* orientation, const OrientationSolution& o) {
        for (std::size_t k = 0; k < o.particular.size(); ++k)
            os << orientation << ",particular," << k + 1 << ',' << o.particular[k] << '\n';
        for (std::size_t v = 0; v < o.null_basis.size(); ++v)
            for (std::size_t k = 0; k < o.null_basis[v].size(); ++k)
                os << orientation << ",null" << v << ',' << k + 1 << ',' << o.null_basis[v][k] << '\n';
    };
    emit("primary", sol.primary);
    emit("companion", sol.companion);
    return os.str();
}

}  // namespace parafermion
