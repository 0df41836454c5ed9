// Command line front end. Every subcommand prints a JSON report
// {command, inputs, outputs, pass, tolerance, wall_ms} (or CSV with --format csv).
// Exit codes: 0 checks passed, 1 numeric check failed, 2 invalid input or usage.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parafermion/enumeration.hpp"
#include "parafermion/holomorphy.hpp"
#include "parafermion/lattice_io.hpp"
#include "parafermion/report.hpp"

namespace pf = parafermion;
using nlohmann::json;

namespace {

struct Global {
    std::string format = "json";
    bool deg = false;
    int threads = 1;
    double tol = 1e-10;
    double nonzero_tol = 1e-3;
    std::string config;
};

struct Outcome {
    json inputs;
    json outputs;
    bool pass = true;
    std::string csv;  // subcommand-specific CSV; empty means flatten outputs
};

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// Accepts plain numbers and the forms pi, -pi/4, 2pi/3, 2*pi/5.
double parse_angle_value(const std::string& text) {
    std::string s = trim(text);
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
    const auto at = lower.find("pi");
    if (at == std::string::npos) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw pf::InvalidInput("cannot parse angle '" + text + "'");
        }
        if (used != s.size()) throw pf::InvalidInput("cannot parse angle '" + text + "'");
        return v;
    }
    std::string coef = trim(lower.substr(0, at));
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double factor = 1.0;
    if (coef == "-") factor = -1.0;
    else if (!coef.empty() && coef != "+") factor = parse_angle_value(coef);
    std::string rest = trim(lower.substr(at + 2));
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw pf::InvalidInput("cannot parse angle '" + text + "'");
        divisor = parse_angle_value(rest.substr(1));
    }
    return factor * pf::kPi / divisor;
}

double angle(const std::string& text, const Global& g) {
    const double v = parse_angle_value(text);
    return g.deg && text.find("pi") == std::string::npos ? v * pf::kPi / 180.0 : v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_angle_value(item));
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& item : split_list(s)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw pf::InvalidInput("cannot parse integer '" + item + "'");
        }
    }
    return out;
}

json complex_list(const std::vector<pf::cplx>& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(pf::complex_json(z));
    return out;
}

std::string flatten_csv(const json& outputs) {
    std::ostringstream os;
    os << "key,value\n";
    for (auto it = outputs.begin(); it != outputs.end(); ++it)
        if (it.value().is_primitive()) os << it.key() << ',' << it.value().dump() << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------

struct WeightsArgs {
    int n = 2;
    std::string alpha = "pi/2";
};

Outcome run_weights(const WeightsArgs& a, const Global& g) {
    const double alpha = angle(a.alpha, g);
    const auto w = pf::fz_weights(a.n, alpha);
    Outcome o;
    o.inputs = {{"n", a.n}, {"alpha", alpha}};
    o.outputs = {{"x", w.coefficients()}, {"free", w.free_couplings()}};
    std::ostringstream os;
    os << std::setprecision(17) << "k,x_k\n";
    for (int k = 0; k < a.n; ++k) os << k << ',' << w[k] << '\n';
    o.csv = os.str();
    return o;
}

struct VerifyArgs {
    int n = 2;
    int m = 1;
    std::string alpha = "pi/2";
    std::string weights;
    std::string rotation = "0";
    bool anti = false;
};

Outcome run_verify(const VerifyArgs& a, const Global& g) {
    const double alpha = angle(a.alpha, g);
    const auto face = pf::canonical_rhombus(alpha, angle(a.rotation, g));
    const pf::WeightVector w =
        a.weights.empty() ? pf::fz_weights(a.n, alpha) : pf::WeightVector::from_free(a.n, parse_doubles(a.weights));
    const auto rep = a.anti ? pf::antiholomorphic_residuals(face, a.n, a.m, w) : pf::face_residuals(face, a.n, a.m, w);
    Outcome o;
    o.inputs = {{"n", a.n}, {"m", a.m}, {"alpha", alpha}, {"weights", w.free_couplings()}, {"anti", a.anti}};
    o.outputs = pf::to_json(rep);
    o.pass = rep.max_abs <= g.tol;
    o.csv = pf::to_csv(rep);
    return o;
}

struct SolveArgs {
    int n = 2;
    int m = 1;
    std::string alpha = "pi/2";
    bool single = false;
};

Outcome run_solve(const SolveArgs& a, const Global& g) {
    const double alpha = angle(a.alpha, g);
    const auto sol = pf::solve_weights(a.n, a.m, alpha, !a.single);
    Outcome o;
    o.inputs = {{"n", a.n}, {"m", a.m}, {"alpha", alpha}, {"joint", !a.single}};
    o.outputs = pf::to_json(sol);
    const auto fz = pf::fz_weights(a.n, alpha).free_couplings();
    o.outputs["fz_free"] = fz;
    o.outputs["fz_in_solution_set"] = sol.contains(fz, 1e-10);
    o.pass = sol.exists;
    o.csv = pf::to_csv(sol);
    return o;
}

struct StarArgs {
    int n = 2;
    std::string alphas = "pi/3,pi/3,pi/3";
    double perturb = 0.0;
};

Outcome run_star(const StarArgs& a, const Global& g) {
    const auto parts = split_list(a.alphas);
    if (parts.size() != 3) throw pf::InvalidInput("--alphas needs three comma-separated angles");
    const std::array<double, 3> al = {angle(parts[0], g), angle(parts[1], g), angle(parts[2], g)};
    auto w = pf::critical_star_triangle_weights(a.n, al);
    if (a.perturb != 0.0) w.star[0] = w.star[0].perturbed(1, a.perturb);
    const auto res = pf::star_triangle_check(a.n, al, w.star, w.tri);
    Outcome o;
    o.inputs = {{"n", a.n}, {"alphas", al}, {"perturb", a.perturb}};
    json star = json::array(), tri = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        star.push_back(w.star[i].coefficients());
        tri.push_back(w.tri[i].coefficients());
    }
    o.outputs = pf::to_json(res);
    o.outputs["w_star"] = star;
    o.outputs["w_tri"] = tri;
    o.pass = res.max_dev <= g.tol;
    return o;
}

struct LatticeArgs {
    std::string action = "build";
    std::string type = "square";
    int rows = 3;
    int cols = 3;
    std::string alpha = "pi/2";
    int size = 2;
    std::string alpha1 = "pi/3";
    std::string alpha2 = "pi/3";
    std::string angles = "0,pi/2";
    std::string offsets;
    int extent = 1;
    std::string file;
    std::vector<int> flips;
    std::string svg;
    std::string save;
    bool labels = false;
};

Outcome run_lattice(const LatticeArgs& a, const Global& g) {
    Outcome o;
    pf::CoveringLattice lat;
    std::vector<pf::StringSpec> strings;
    if (a.action == "load") {
        if (a.file.empty()) throw pf::InvalidInput("lattice load needs --file");
        auto doc = pf::load_lattice(a.file);
        lat = std::move(doc.lattice);
        strings = std::move(doc.strings);
        o.inputs = {{"action", "load"}, {"file", a.file}};
    } else if (a.type == "square") {
        lat = pf::build_square_covering(a.rows, a.cols, angle(a.alpha, g));
        o.inputs = {{"type", a.type}, {"rows", a.rows}, {"cols", a.cols}, {"alpha", angle(a.alpha, g)}};
    } else if (a.type == "tri" || a.type == "hex") {
        const double a1 = angle(a.alpha1, g);
        const double a2 = angle(a.alpha2, g);
        lat = a.type == "tri" ? pf::build_triangular_covering(a.size, a1, a2) : pf::build_honeycomb_covering(a.size, a1, a2);
        o.inputs = {{"type", a.type}, {"size", a.size}, {"alpha1", a1}, {"alpha2", a2}};
    } else if (a.type == "multigrid") {
        pf::LineArrangement arr;
        for (const auto& s : split_list(a.angles)) arr.angles.push_back(angle(s, g));
        if (a.offsets.empty()) {
            // Generic default offsets avoid triple points.
            for (std::size_t i = 0; i < arr.angles.size(); ++i) arr.offsets.push_back(0.1 + 0.137 * static_cast<double>(i));
        } else {
            arr.offsets = parse_doubles(a.offsets);
        }
        arr.extent = a.extent;
        lat = pf::build_multigrid_tiling(arr);
        o.inputs = {{"type", a.type}, {"angles", arr.angles}, {"offsets", arr.offsets}, {"extent", arr.extent}};
    } else {
        throw pf::InvalidInput("unknown lattice type '" + a.type + "'");
    }
    const std::size_t primal_before = lat.primal_count();
    for (int v : a.flips) lat = pf::hexagon_flip(lat, pf::hexagon_faces(lat, v));

    const auto problems = pf::lattice_violations(lat);
    std::vector<double> alphas;
    for (const auto& f : lat.faces) alphas.push_back(f.alpha);
    std::sort(alphas.begin(), alphas.end());
    o.outputs = {{"vertices", lat.vertices.size()},
                 {"primal_vertices", lat.primal_count()},
                 {"primal_vertices_before_flips", primal_before},
                 {"faces", lat.faces.size()},
                 {"covering_edges", lat.edges.size()},
                 {"boundary", lat.boundary.size()},
                 {"folded_faces", std::count_if(lat.faces.begin(), lat.faces.end(), [](const auto& f) { return f.folded(); })},
                 {"overlap", pf::faces_overlap(lat)},
                 {"flippable", pf::flippable_vertices(lat)},
                 {"face_alphas", alphas},
                 {"violations", problems}};
    if (!a.save.empty()) {
        pf::save_lattice(a.save, lat, strings);
        o.outputs["saved"] = a.save;
    }
    if (!a.svg.empty()) {
        pf::SvgStyle style;
        style.label_vertices = a.labels;
        pf::export_svg(lat, a.svg, strings, style);
        o.outputs["svg"] = a.svg;
    }
    o.pass = problems.empty();
    return o;
}

struct EnumerateArgs {
    std::string lattice;
    std::string check = "partition";
    int n = 2;
    int m = 1;
    int face = -1;
    std::string weights;
    double perturb = 0.0;
    std::vector<std::string> spectators;
    std::string path_a;
    std::string path_b;
    double cap = 1e7;
};

Outcome run_enumerate(const EnumerateArgs& a, const Global& g) {
    if (a.lattice.empty()) throw pf::InvalidInput("enumerate needs --lattice FILE");
    const auto doc = pf::load_lattice(a.lattice);
    const auto& lat = doc.lattice;
    pf::EdgeWeights w = a.weights.empty()
                            ? pf::critical_weights(lat, a.n)
                            : pf::uniform_weights(lat, pf::WeightVector::from_free(a.n, parse_doubles(a.weights)));
    if (a.perturb != 0.0) w = pf::perturb_weights(w, 1, a.perturb);
    pf::EnumerationOptions opt;
    opt.threads = g.threads;
    if (!(a.cap >= 1.0)) throw pf::InvalidInput("--cap must be >= 1");
    opt.cap = static_cast<std::uint64_t>(a.cap);
    std::vector<pf::Spectator> spect;
    for (const auto& s : a.spectators) {
        const auto colon = s.find(':');
        try {
            spect.push_back({std::stoi(s.substr(0, colon)), colon == std::string::npos ? 1 : std::stoi(s.substr(colon + 1))});
        } catch (const std::exception&) {
            throw pf::InvalidInput("spectator must be VERTEX[:POWER], got '" + s + "'");
        }
    }

    Outcome o;
    o.inputs = {{"lattice", a.lattice}, {"check", a.check}, {"n", a.n}, {"m", a.m}, {"face", a.face},
                {"perturb", a.perturb}, {"threads", g.threads}};
    json spec_json = json::array();
    for (const auto& s : spect) spec_json.push_back({s.vertex, s.power});
    o.inputs["spectators"] = spec_json;

    if (a.check == "partition") {
        const double z = pf::partition_function(lat, w, opt);
        o.outputs = {{"Z", z}, {"config_count", pf::configuration_count(lat, a.n)}};
        o.pass = std::isfinite(z);
    } else if (a.check == "correlator") {
        std::vector<pf::DisorderString> strings;
        for (const auto& s : doc.strings) strings.emplace_back(lat, a.n, s.sector, s.path);
        const auto r = pf::correlator(lat, w, strings, spect, opt);
        o.outputs = pf::to_json(r);
        o.pass = std::isfinite(r.value.real()) && std::isfinite(r.value.imag());
    } else if (a.check == "face-sum" || a.check == "identity") {
        std::vector<int> faces;
        if (a.face >= 0) {
            faces.push_back(a.face);
        } else {
            for (std::size_t f = 0; f < lat.faces.size(); ++f)
                if (!lat.is_boundary(lat.faces[f].d1()) && !lat.is_boundary(lat.faces[f].d2()))
                    faces.push_back(static_cast<int>(f));
        }
        json rows = json::array();
        double worst = 0.0;
        for (int f : faces) {
            if (a.check == "face-sum") {
                // Without insertions the sum is zero by charge; neutralise with s^{N-m} off the face.
                auto face_spect = spect;
                if (face_spect.empty()) face_spect.push_back({pf::primal_vertices_off_face(lat, f).front(), a.n - a.m});
                const auto r = pf::face_sum_check(lat, w, f, a.m, face_spect, opt);
                worst = std::max(worst, r.relative);
                json row = pf::to_json(r);
                row["spectators"] = json::array();
                for (const auto& sp : face_spect) row["spectators"].push_back({{"vertex", sp.vertex}, {"power", sp.power}});
                rows.push_back(row);
            } else {
                const auto r = pf::configuration_identity_check(lat, w, f, a.m, opt);
                worst = std::max(worst, r.max_relative);
                json row = pf::to_json(r);
                row["face"] = f;
                rows.push_back(row);
            }
        }
        o.outputs = {{"faces", rows}, {"worst_relative", worst}, {"checked", faces.size()}};
        o.pass = worst <= g.tol;
    } else if (a.check == "path-independence") {
        std::vector<int> pa = parse_ints(a.path_a);
        std::vector<int> pb = parse_ints(a.path_b);
        if ((pa.empty() || pb.empty()) && doc.strings.size() >= 2) {
            pa = doc.strings[0].path;
            pb = doc.strings[1].path;
        }
        if (pa.empty() || pb.empty()) throw pf::InvalidInput("path-independence needs --path-a and --path-b");
        const auto r = pf::path_independence_check(lat, w, a.m, pa, pb, spect, opt);
        o.outputs = pf::to_json(r);
        if (!r.neutral) o.outputs["warning"] = "insertions are not Z_N neutral; gauge minimisation is not guaranteed";
        o.pass = r.deviation <= g.tol;
    } else {
        throw pf::InvalidInput("unknown check '" + a.check + "'");
    }
    return o;
}

// Plain key=value config lines become "--key value" tokens placed right after the
// subcommand, so flags given on the command line (parsed later) win.
std::vector<std::string> with_config(const std::vector<std::string>& args, const std::vector<std::string>& flags) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw pf::InvalidInput("cannot read config file '" + path + "'");
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw pf::InvalidInput("config line without '=': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find(flags.begin(), flags.end(), key) != flags.end()) {
            if (value == "true" || value == "1") extra.push_back("--" + key);
            continue;
        }
        extra.push_back("--" + key);
        extra.push_back(value);
    }
    std::vector<std::string> out = args;
    std::size_t at = 1;
    while (at < out.size() && out[at].rfind("-", 0) == 0) ++at;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(std::min(at + 1, out.size())), extra.begin(), extra.end());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discretely holomorphic parafermions for Z_N lattice models", "parafermion"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Global g;
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--deg", g.deg, "Angles given in degrees");
    app.add_option("--threads", g.threads, "Worker threads for enumeration")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Tolerance for identity checks");
    app.add_option("--nonzero-tol", g.nonzero_tol, "Threshold for 'definitely nonzero'");
    app.add_option("--config", g.config, "Plain key=value file; command line flags win");

    WeightsArgs wa;
    auto* weights = app.add_subcommand("weights", "Critical weights x_k(alpha)");
    weights->add_option("--n", wa.n, "Modulus N")->required();
    weights->add_option("--alpha", wa.alpha, "Rhombus angle (radians, or pi/k forms)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Contour residuals on one rhombus");
    verify->add_option("--n", va.n, "Modulus N")->required();
    verify->add_option("--m", va.m, "Sector m");
    verify->add_option("--alpha", va.alpha, "Rhombus angle");
    verify->add_option("--weights", va.weights, "Free couplings x_1..x_{N/2}, comma separated (default: critical)");
    verify->add_option("--rotation", va.rotation, "Rotation of the rhombus");
    verify->add_flag("--anti", va.anti, "Antiholomorphic contract");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve holomorphicity for the couplings");
    solve->add_option("--n", sa.n, "Modulus N")->required();
    solve->add_option("--m", sa.m, "Sector m");
    solve->add_option("--alpha", sa.alpha, "Rhombus angle");
    solve->add_flag("--single", sa.single, "Only the alpha orientation (diagnostic)");

    StarArgs sta;
    auto* star = app.add_subcommand("star-triangle", "Star-triangle relation at critical weights");
    star->add_option("--n", sta.n, "Modulus N")->required();
    star->add_option("--alphas", sta.alphas, "Three angles summing to pi");
    star->add_option("--perturb", sta.perturb, "Shift x_1 of the first star weight");

    LatticeArgs la;
    auto* lattice = app.add_subcommand("lattice", "Build or load a covering lattice");
    lattice->add_option("action", la.action, "build | load")->check(CLI::IsMember({"build", "load"}));
    lattice->add_option("--type", la.type, "square | tri | hex | multigrid")
        ->check(CLI::IsMember({"square", "tri", "hex", "multigrid"}));
    lattice->add_option("--rows", la.rows, "Square rows");
    lattice->add_option("--cols", la.cols, "Square columns");
    lattice->add_option("--alpha", la.alpha, "Square rhombus angle");
    lattice->add_option("--size", la.size, "Triangular/honeycomb patch size");
    lattice->add_option("--alpha1", la.alpha1, "Triangular angle 1");
    lattice->add_option("--alpha2", la.alpha2, "Triangular angle 2");
    lattice->add_option("--angles", la.angles, "Multigrid family directions");
    lattice->add_option("--offsets", la.offsets, "Multigrid offsets");
    lattice->add_option("--extent", la.extent, "Multigrid lines per family: -extent..extent");
    lattice->add_option("--file", la.file, "Lattice JSON to load");
    lattice->add_option("--flip", la.flips, "Flip the hexagon around this vertex (repeatable)")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    lattice->add_option("--svg", la.svg, "Write an SVG drawing");
    lattice->add_option("--save", la.save, "Write the lattice JSON");
    lattice->add_flag("--labels", la.labels, "Label vertex ids in the SVG");

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "Exact enumeration checks on a lattice file");
    enumerate->add_option("--lattice", ea.lattice, "Lattice JSON")->required();
    enumerate->add_option("--check", ea.check, "partition | correlator | face-sum | identity | path-independence")
        ->check(CLI::IsMember({"partition", "correlator", "face-sum", "identity", "path-independence"}));
    enumerate->add_option("--n", ea.n, "Modulus N");
    enumerate->add_option("--m", ea.m, "Sector m");
    enumerate->add_option("--face", ea.face, "Face id (default: all interior faces)");
    enumerate->add_option("--weights", ea.weights, "Uniform free couplings (default: critical per face)");
    enumerate->add_option("--perturb", ea.perturb, "Shift x_1 on every edge");
    enumerate->add_option("--spectator", ea.spectators, "VERTEX[:POWER], repeatable")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    enumerate->add_option("--path-a", ea.path_a, "Dual path for path-independence");
    enumerate->add_option("--path-b", ea.path_b, "Second dual path");
    enumerate->add_option("--cap", ea.cap, "Maximum number of configurations");

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> args(argv, argv + argc);
    try {
        args = with_config(args, {"deg", "anti", "single", "labels"});
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const pf::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    std::string command;
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    Outcome o;
    try {
        if (*weights) o = run_weights(wa, g);
        else if (*verify) o = run_verify(va, g);
        else if (*solve) o = run_solve(sa, g);
        else if (*star) o = run_star(sta, g);
        else if (*lattice) o = run_lattice(la, g);
        else o = run_enumerate(ea, g);
    } catch (const pf::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const pf::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const pf::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const pf::SingularWeight& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (g.format == "csv") {
        std::cout << (o.csv.empty() ? flatten_csv(o.outputs) : o.csv);
    } else {
        json report = {{"command", command},
                       {"inputs", o.inputs},
                       {"outputs", o.outputs},
                       {"pass", o.pass},
                       {"tolerance", {{"identity", g.tol}, {"nonzero", g.nonzero_tol}}},
                       {"wall_ms", wall_ms}};
        std::cout << report.dump(2) << '\n';
    }
    return o.pass ? 0 : 1;
}
