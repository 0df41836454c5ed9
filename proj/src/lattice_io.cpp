#include "parafermion/lattice_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace parafermion {

using nlohmann::json;

json lattice_to_json(const CoveringLattice& lat, const std::vector<StringSpec>& strings) {
    json doc;
    doc["vertices"] = json::array();
    for (const auto& v : lat.vertices) {
        doc["vertices"].push_back({{"id", v.id}, {"kind", to_string(v.kind)}, {"re", v.z.real()}, {"im", v.z.imag()}});
    }
    doc["edges"] = json::array();
    for (const auto& [p, d] : lat.edges) doc["edges"].push_back({p, d});
    doc["primal_edges"] = json::array();
    for (const auto& e : lat.primal_edges) doc["primal_edges"].push_back({e.p1, e.p2});
    doc["boundary"] = lat.boundary;
    std::vector<int> folded;
    for (std::size_t f = 0; f < lat.faces.size(); ++f)
        if (lat.faces[f].folded()) folded.push_back(static_cast<int>(f));
    if (!folded.empty()) doc["folded"] = folded;
    if (!strings.empty()) {
        doc["strings"] = json::array();
        for (const auto& s : strings) doc["strings"].push_back({{"sector", s.sector}, {"path", s.path}});
    }
    return doc;
}

namespace {

LatticeDocument parse(const json& doc) {
    std::vector<VertexRecord> vertices;
    for (const auto& v : doc.at("vertices")) {
        const std::string kind = v.at("kind").get<std::string>();
        if (kind != "primal" && kind != "dual") throw InvalidInput("unknown vertex kind '" + kind + "'");
        vertices.push_back({v.at("id").get<int>(), kind == "primal" ? VertexKind::primal : VertexKind::dual,
                            cplx(v.at("re").get<double>(), v.at("im").get<double>())});
    }
    std::sort(vertices.begin(), vertices.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id != static_cast<int>(i)) throw InvalidInput("vertex ids must be 0..V-1");
    const int nv = static_cast<int>(vertices.size());
    auto check_id = [nv](int id) {
        if (id < 0 || id >= nv) throw InvalidInput("vertex id " + std::to_string(id) + " out of range");
        return id;
    };

    std::set<std::pair<int, int>> edges;
    std::map<int, std::set<int>> duals_of;
    for (const auto& e : doc.at("edges")) {
        const int p = check_id(e.at(0).get<int>());
        const int d = check_id(e.at(1).get<int>());
        edges.insert({p, d});
        duals_of[p].insert(d);
    }
    std::set<int> folded;
    if (doc.contains("folded"))
        for (const auto& f : doc.at("folded")) folded.insert(f.get<int>());

    std::vector<std::array<int, 4>> faces;
    std::vector<bool> fold_flags;
    int index = 0;
    for (const auto& e : doc.at("primal_edges")) {
        const int p1 = check_id(e.at(0).get<int>());
        const int p2 = check_id(e.at(1).get<int>());
        std::vector<int> common;
        std::set_intersection(duals_of[p1].begin(), duals_of[p1].end(), duals_of[p2].begin(), duals_of[p2].end(),
                              std::back_inserter(common));
        if (common.size() != 2) {
            throw InvalidInput("primal edge " + std::to_string(index) + " does not close a quadrilateral face");
        }
        const cplx a = vertices[static_cast<std::size_t>(p1)].z;
        const cplx b = vertices[static_cast<std::size_t>(p2)].z;
        const cplx c = vertices[static_cast<std::size_t>(common[0])].z;
        const double side = (b - a).real() * (c - a).imag() - (b - a).imag() * (c - a).real();
        const bool fold = folded.count(index) > 0;
        // D1 is right of P1 -> P2 for ordinary faces and left of it for folded ones.
        const bool first_is_d1 = fold ? side > 0.0 : side < 0.0;
        const int d1 = first_is_d1 ? common[0] : common[1];
        const int d2 = first_is_d1 ? common[1] : common[0];
        faces.push_back({p1, d1, p2, d2});
        fold_flags.push_back(fold);
        ++index;
    }
    std::vector<int> boundary;
    for (const auto& b : doc.at("boundary")) boundary.push_back(check_id(b.get<int>()));

    LatticeDocument out;
    out.lattice = assemble_lattice(std::move(vertices), faces, fold_flags, std::move(boundary));
    if (std::set<std::pair<int, int>>(out.lattice.edges.begin(), out.lattice.edges.end()) != edges) {
        throw InvalidInput("covering edges do not match the faces implied by primal_edges");
    }
    const auto problems = lattice_violations(out.lattice);
    if (!problems.empty()) throw InvalidInput("invalid lattice: " + problems.front());

    if (doc.contains("strings")) {
        for (const auto& s : doc.at("strings")) {
            StringSpec spec;
            spec.sector = s.at("sector").get<int>();
            for (const auto& v : s.at("path")) spec.path.push_back(check_id(v.get<int>()));
            out.strings.push_back(std::move(spec));
        }
    }
    return out;
}

}  // namespace

LatticeDocument lattice_from_json(const json& doc) {
    try {
        return parse(doc);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed lattice file: ") + e.what());
    }
}

void save_lattice(const std::string& path, const CoveringLattice& lat, const std::vector<StringSpec>& strings) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << lattice_to_json(lat, strings).dump(1) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

LatticeDocument load_lattice(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read lattice file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InvalidInput("malformed lattice file '" + path + "': " + e.what());
    }
    return lattice_from_json(doc);
}

// ---------------------------------------------------------------------------

std::string render_svg(const CoveringLattice& lat, const std::vector<StringSpec>& strings, const SvgStyle& style) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& v : lat.vertices) {
        if (first) {
            xmin = xmax = v.z.real();
            ymin = ymax = v.z.imag();
            first = false;
        }
        xmin = std::min(xmin, v.z.real());
        xmax = std::max(xmax, v.z.real());
        ymin = std::min(ymin, v.z.imag());
        ymax = std::max(ymax, v.z.imag());
    }
    const double s = style.scale;
    const double pad = style.margin;
    auto px = [&](cplx z) { return (z.real() - xmin + pad) * s; };
    auto py = [&](cplx z) { return (ymax - z.imag() + pad) * s; };  // SVG y grows downwards
    const double width = (xmax - xmin + 2 * pad) * s;
    const double height = (ymax - ymin + 2 * pad) * s;

    std::ostringstream os;
    os << std::setprecision(10);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<style>\n"
       << "  .face { fill: #f3efe2; stroke: none; }\n"
       << "  .face.folded { fill: #f2d4d4; fill-opacity: 0.6; }\n"
       << "  .edge { stroke: #6b6b6b; stroke-width: 1; }\n"
       << "  .primal-edge { stroke: #1d4f91; stroke-width: 1.5; stroke-dasharray: 6 4; }\n"
       << "  .string { stroke: #b03a2e; stroke-width: 2; stroke-dasharray: 2 3; }\n"
       << "  circle.primal { fill: #111111; }\n"
       << "  circle.dual { fill: #ffffff; stroke: #111111; stroke-width: 1.2; }\n"
       << "  text { font: 9px sans-serif; fill: #333333; }\n"
       << "</style>\n";
    for (const auto& f : lat.faces) {
        os << "<polygon class=\"face" << (f.folded() ? " folded" : "") << "\" points=\"";
        for (std::size_t k = 0; k < 4; ++k) os << (k ? " " : "") << px(f.z[k]) << ',' << py(f.z[k]);
        os << "\"/>\n";
    }
    auto line = [&](const char* cls, cplx a, cplx b) {
        os << "<line class=\"" << cls << "\" x1=\"" << px(a) << "\" y1=\"" << py(a) << "\" x2=\"" << px(b)
           << "\" y2=\"" << py(b) << "\"/>\n";
    };
    for (const auto& [p, d] : lat.edges) line("edge", lat.vertex(p).z, lat.vertex(d).z);
    for (const auto& e : lat.primal_edges) line("primal-edge", lat.vertex(e.p1).z, lat.vertex(e.p2).z);
    for (const auto& str : strings)
        for (std::size_t i = 1; i < str.path.size(); ++i)
            line("string", lat.vertex(str.path[i - 1]).z, lat.vertex(str.path[i]).z);
    const double r = 0.08 * s;
    for (const auto& v : lat.vertices) {
        os << "<circle class=\"" << to_string(v.kind) << "\" cx=\"" << px(v.z) << "\" cy=\"" << py(v.z) << "\" r=\""
           << r << "\"/>\n";
        if (style.label_vertices)
            os << "<text x=\"" << px(v.z) + r << "\" y=\"" << py(v.z) - r << "\">" << v.id << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void export_svg(const CoveringLattice& lat, const std::string& path, const std::vector<StringSpec>& strings,
                const SvgStyle& style) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << render_svg(lat, strings, style);
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace parafermion
