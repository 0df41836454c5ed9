// Thin pybind11 layer: structured results cross the boundary as JSON text and are
// decoded by the package's __init__.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parafermion/enumeration.hpp"
#include "parafermion/lattice_io.hpp"
#include "parafermion/report.hpp"

namespace py = pybind11;
namespace pf = parafermion;
using nlohmann::json;

namespace {

pf::WeightVector weights_or_fz(int n, double alpha, const std::optional<std::vector<double>>& free) {
    if (!free) return pf::fz_weights(n, alpha);
    return pf::WeightVector::from_free(n, *free);
}

pf::CoveringLattice lattice_of(const std::string& text) {
    try {
        return pf::lattice_from_json(json::parse(text)).lattice;
    } catch (const json::exception& e) {
        throw pf::InvalidInput(std::string("lattice JSON: ") + e.what());
    }
}

std::vector<pf::Spectator> spectators_of(const std::vector<std::pair<int, int>>& items) {
    std::vector<pf::Spectator> out;
    for (const auto& [v, p] : items) out.push_back({v, p});
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Z_N parafermion holomorphicity checks";

    py::register_exception<pf::InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<pf::SingularWeight>(m, "SingularWeight", PyExc_ArithmeticError);
    py::register_exception<pf::BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<pf::IoError>(m, "IoError", PyExc_OSError);

    m.def("fz_weights", [](int n, double alpha) { return pf::fz_weights(n, alpha).coefficients(); },
          py::arg("n"), py::arg("alpha"));
    m.def("conformal_spin", [](int n, int mm) {
        const auto r = pf::conformal_spin(n, mm);
        return std::make_pair(r.numerator(), r.denominator());
    });
    m.def("central_charge", [](int n) {
        const auto r = pf::central_charge(n);
        return std::make_pair(r.numerator(), r.denominator());
    });

    m.def(
        "face_residuals",
        [](int n, int mm, double alpha, std::optional<std::vector<double>> free, double rotation, bool anti) {
            const auto face = pf::canonical_rhombus(alpha, rotation);
            const auto w = weights_or_fz(n, alpha, free);
            const auto rep = anti ? pf::antiholomorphic_residuals(face, n, mm, w) : pf::face_residuals(face, n, mm, w);
            return pf::to_json(rep).dump();
        },
        py::arg("n"), py::arg("m"), py::arg("alpha"), py::arg("weights") = py::none(), py::arg("rotation") = 0.0,
        py::arg("anti") = false);

    m.def(
        "solve_weights",
        [](int n, int mm, double alpha, bool joint) { return pf::to_json(pf::solve_weights(n, mm, alpha, joint)).dump(); },
        py::arg("n"), py::arg("m"), py::arg("alpha"), py::arg("joint") = true);

    m.def(
        "star_triangle",
        [](int n, std::array<double, 3> alphas) {
            const auto w = pf::critical_star_triangle_weights(n, alphas);
            return pf::to_json(pf::star_triangle_check(n, alphas, w.star, w.tri)).dump();
        },
        py::arg("n"), py::arg("alphas"));

    m.def(
        "build_square",
        [](int rows, int cols, double alpha) { return pf::lattice_to_json(pf::build_square_covering(rows, cols, alpha)).dump(); },
        py::arg("rows"), py::arg("cols"), py::arg("alpha"));
    m.def(
        "build_multigrid",
        [](std::vector<double> angles, std::vector<double> offsets, int extent) {
            return pf::lattice_to_json(pf::build_multigrid_tiling({std::move(angles), std::move(offsets), extent})).dump();
        },
        py::arg("angles"), py::arg("offsets"), py::arg("extent") = 1);
    m.def(
        "lattice_violations", [](const std::string& lattice) { return pf::lattice_violations(lattice_of(lattice)); },
        py::arg("lattice"));
    m.def(
        "render_svg", [](const std::string& lattice) { return pf::render_svg(lattice_of(lattice)); }, py::arg("lattice"));

    m.def(
        "partition_function",
        [](const std::string& lattice, int n, int threads) {
            const auto lat = lattice_of(lattice);
            py::gil_scoped_release release;
            return pf::partition_function(lat, pf::critical_weights(lat, n), {10'000'000, threads});
        },
        py::arg("lattice"), py::arg("n"), py::arg("threads") = 1);
    m.def(
        "face_sum",
        [](const std::string& lattice, int n, int mm, int face, std::vector<std::pair<int, int>> spectators,
           double perturb) {
            const auto lat = lattice_of(lattice);
            auto w = pf::critical_weights(lat, n);
            if (perturb != 0.0) w = pf::perturb_weights(w, 1, perturb);
            pf::FaceSumResult r;
            {
                py::gil_scoped_release release;
                r = pf::face_sum_check(lat, w, face, mm, spectators_of(spectators));
            }
            return pf::to_json(r).dump();
        },
        py::arg("lattice"), py::arg("n"), py::arg("m"), py::arg("face"), py::arg("spectators"),
        py::arg("perturb") = 0.0);
}
