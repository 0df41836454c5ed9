#include "parafermion/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace parafermion {

namespace {

double wrap_angle(double t) {
    // [-pi, pi) as in the edge-angle convention.
    double w = std::remainder(t, 2.0 * kPi);
    if (w >= kPi) w -= 2.0 * kPi;
    return w;
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double signed_area(const std::array<cplx, 4>& z) {
    double area = 0.0;
    for (std::size_t i = 0; i < 4; ++i) area += cross(z[i], z[(i + 1) % 4]);
    return 0.5 * area;
}

double interior_angle(cplx at, cplx a, cplx b) { return std::abs(std::arg((b - at) / (a - at))); }

std::string describe(int face, const std::string& what) {
    std::ostringstream os;
    os << "face " << face << ": " << what;
    return os.str();
}

}  // namespace

const char* to_string(VertexKind kind) { return kind == VertexKind::primal ? "primal" : "dual"; }

RhombusGeometry make_face(std::array<int, 4> ids, std::array<cplx, 4> z, bool folded) {
    RhombusGeometry f;
    f.corners = ids;
    f.z = z;
    f.edge_deltas = {z[1] - z[0], z[2] - z[1], z[3] - z[2], z[0] - z[3]};
    f.edge_thetas = {wrap_angle(std::arg(z[1] - z[0])), wrap_angle(std::arg(z[1] - z[2])),
                     wrap_angle(std::arg(z[3] - z[2])), wrap_angle(std::arg(z[3] - z[0]))};
    const double opening = interior_angle(z[0], z[1], z[3]);
    f.alpha = folded ? -opening : opening;
    return f;
}

RhombusGeometry RhombusGeometry::reversed() const {
    return make_face({corners[2], corners[3], corners[0], corners[1]}, {z[2], z[3], z[0], z[1]},
                     folded());
}

RhombusGeometry canonical_rhombus(double alpha, double rotation, cplx center) {
    if (!std::isfinite(alpha) || alpha == 0.0 || std::abs(alpha) >= kPi) {
        throw InvalidInput("invalid angle: rhombus opening angle must lie in (-pi, pi) \\ {0}");
    }
    const cplx u = std::polar(1.0, rotation);
    const cplx v = cplx(0.0, 1.0) * u;
    const double half_primal = std::cos(alpha / 2.0);
    const double half_dual = std::sin(alpha / 2.0);
    return make_face({0, 1, 2, 3},
                     {center - half_primal * u, center - half_dual * v, center + half_primal * u,
                      center + half_dual * v},
                     alpha < 0.0);
}

std::vector<std::string> rhombus_violations(const RhombusGeometry& face, double tol) {
    std::vector<std::string> out;
    const auto& d = face.edge_deltas;
    const double side = std::abs(d[0]);
    if (!(side > 0.0)) {
        out.emplace_back("degenerate side");
        return out;
    }
    const cplx closure = d[0] + d[1] + d[2] + d[3];
    if (std::abs(closure) > tol * side) out.emplace_back("polygon not closed");
    for (const cplx& e : d) {
        if (std::abs(std::abs(e) - side) > tol * side) {
            out.emplace_back("unequal side lengths");
            break;
        }
    }
    const auto& z = face.z;
    const double a = std::abs(face.alpha);
    const double angle_tol = std::max(tol, 1e-12) * 10.0;
    if (std::abs(interior_angle(z[0], z[1], z[3]) - a) > angle_tol ||
        std::abs(interior_angle(z[2], z[1], z[3]) - a) > angle_tol) {
        out.emplace_back("primal corner angles differ from alpha");
    }
    if (std::abs(interior_angle(z[1], z[0], z[2]) - (kPi - a)) > angle_tol ||
        std::abs(interior_angle(z[3], z[0], z[2]) - (kPi - a)) > angle_tol) {
        out.emplace_back("dual corner angles differ from pi - alpha");
    }
    const double area = signed_area(z);
    if (face.folded() ? area > 0.0 : area < 0.0) out.emplace_back("orientation does not match fold flag");
    const std::array<std::pair<int, int>, 4> pd = {{{0, 1}, {2, 1}, {2, 3}, {0, 3}}};
    for (std::size_t e = 0; e < 4; ++e) {
        const double t = wrap_angle(std::arg(z[static_cast<std::size_t>(pd[e].second)] -
                                             z[static_cast<std::size_t>(pd[e].first)]));
        const double diff = std::abs(std::remainder(t - face.edge_thetas[e], 2.0 * kPi));
        if (diff > 1e-12 || face.edge_thetas[e] < -kPi || face.edge_thetas[e] >= kPi) {
            out.emplace_back("edge angle does not match coordinates");
            break;
        }
    }
    return out;
}

std::vector<int> CoveringLattice::primal_vertices() const {
    std::vector<int> out;
    for (const auto& v : vertices)
        if (v.kind == VertexKind::primal) out.push_back(v.id);
    return out;
}

std::vector<int> CoveringLattice::dual_vertices() const {
    std::vector<int> out;
    for (const auto& v : vertices)
        if (v.kind == VertexKind::dual) out.push_back(v.id);
    return out;
}

std::size_t CoveringLattice::primal_count() const {
    return static_cast<std::size_t>(std::count_if(
        vertices.begin(), vertices.end(), [](const VertexRecord& v) { return v.kind == VertexKind::primal; }));
}

bool CoveringLattice::is_boundary(int dual_id) const {
    return std::binary_search(boundary.begin(), boundary.end(), dual_id);
}

CoveringLattice assemble_lattice(std::vector<VertexRecord> vertices,
                                 const std::vector<std::array<int, 4>>& face_corners,
                                 const std::vector<bool>& folded, std::vector<int> boundary) {
    CoveringLattice lat;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].id != static_cast<int>(i)) throw InvalidInput("vertex ids must equal their index");
    }
    lat.vertices = std::move(vertices);
    const auto nv = static_cast<int>(lat.vertices.size());
    std::set<std::pair<int, int>> edge_set;
    for (std::size_t f = 0; f < face_corners.size(); ++f) {
        const auto& c = face_corners[f];
        std::array<cplx, 4> z;
        for (std::size_t k = 0; k < 4; ++k) {
            if (c[k] < 0 || c[k] >= nv) throw InvalidInput("face corner id out of range");
            z[k] = lat.vertices[static_cast<std::size_t>(c[k])].z;
        }
        const bool fold = f < folded.size() && folded[f];
        lat.faces.push_back(make_face(c, z, fold));
        lat.primal_edges.push_back({c[0], c[2], static_cast<int>(f)});
        edge_set.insert({c[0], c[1]});
        edge_set.insert({c[2], c[1]});
        edge_set.insert({c[2], c[3]});
        edge_set.insert({c[0], c[3]});
    }
    lat.edges.assign(edge_set.begin(), edge_set.end());
    std::sort(boundary.begin(), boundary.end());
    boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
    lat.boundary = std::move(boundary);
    return lat;
}

std::vector<std::string> lattice_violations(const CoveringLattice& lat, double tol) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < lat.vertices.size(); ++i) {
        if (lat.vertices[i].id != static_cast<int>(i)) out.emplace_back("vertex id mismatch");
    }
    auto kind = [&](int id) { return lat.vertices.at(static_cast<std::size_t>(id)).kind; };
    for (const auto& [p, d] : lat.edges) {
        if (kind(p) != VertexKind::primal || kind(d) != VertexKind::dual) {
            out.emplace_back("covering edge is not primal-dual");
            break;
        }
    }
    if (lat.primal_edges.size() != lat.faces.size()) out.emplace_back("primal edge count differs from face count");
    std::set<std::pair<int, int>> edge_set(lat.edges.begin(), lat.edges.end());
    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
        const auto& face = lat.faces[f];
        for (const auto& msg : rhombus_violations(face, tol)) out.push_back(describe(static_cast<int>(f), msg));
        if (kind(face.p1()) != VertexKind::primal || kind(face.p2()) != VertexKind::primal ||
            kind(face.d1()) != VertexKind::dual || kind(face.d2()) != VertexKind::dual) {
            out.push_back(describe(static_cast<int>(f), "corner kinds are not (P, D, P, D)"));
        }
        if (f < lat.primal_edges.size()) {
            const auto& pe = lat.primal_edges[f];
            if (pe.face != static_cast<int>(f) || pe.p1 != face.p1() || pe.p2 != face.p2()) {
                out.push_back(describe(static_cast<int>(f), "primal edge does not match its face"));
            }
        }
        for (auto pd : {std::pair{face.p1(), face.d1()}, std::pair{face.p2(), face.d1()},
                        std::pair{face.p2(), face.d2()}, std::pair{face.p1(), face.d2()}}) {
            if (!edge_set.count(pd)) out.push_back(describe(static_cast<int>(f), "side missing from covering edges"));
        }
    }
    for (int b : lat.boundary) {
        if (b < 0 || b >= static_cast<int>(lat.vertices.size()) || kind(b) != VertexKind::dual) {
            out.emplace_back("boundary vertex is not a dual vertex");
            break;
        }
    }
    return out;
}

bool faces_overlap(const CoveringLattice& lat, double tol) {
    auto strictly_inside = [tol](const RhombusGeometry& f, cplx p) {
        for (std::size_t i = 0; i < 4; ++i) {
            const cplx a = f.z[i];
            const cplx b = f.z[(i + 1) % 4];
            if (cross(b - a, p - a) <= tol) return false;
        }
        return true;
    };
    for (std::size_t i = 0; i < lat.faces.size(); ++i) {
        const auto& fi = lat.faces[i];
        if (fi.folded()) continue;
        const cplx centre = 0.25 * (fi.z[0] + fi.z[1] + fi.z[2] + fi.z[3]);
        std::vector<cplx> samples{centre};
        for (const cplx& c : fi.z) samples.push_back(centre + 0.5 * (c - centre));
        for (std::size_t j = 0; j < lat.faces.size(); ++j) {
            if (i == j || lat.faces[j].folded()) continue;
            for (const cplx& s : samples)
                if (strictly_inside(lat.faces[j], s)) return true;
        }
    }
    return false;
}

std::vector<std::vector<std::pair<int, int>>> dual_adjacency(const CoveringLattice& lat) {
    std::vector<std::vector<std::pair<int, int>>> adj(lat.vertices.size());
    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
        const auto& face = lat.faces[f];
        adj[static_cast<std::size_t>(face.d1())].emplace_back(face.d2(), static_cast<int>(f));
        adj[static_cast<std::size_t>(face.d2())].emplace_back(face.d1(), static_cast<int>(f));
    }
    return adj;
}

std::vector<double> vertex_angle_sums(const CoveringLattice& lat) {
    std::vector<double> sums(lat.vertices.size(), 0.0);
    for (const auto& face : lat.faces) {
        const double a = std::abs(face.alpha);
        sums[static_cast<std::size_t>(face.p1())] += a;
        sums[static_cast<std::size_t>(face.p2())] += a;
        sums[static_cast<std::size_t>(face.d1())] += kPi - a;
        sums[static_cast<std::size_t>(face.d2())] += kPi - a;
    }
    return sums;
}

// ---------------------------------------------------------------------------

CoveringLattice build_square_covering(int rows, int cols, double alpha) {
    if (rows < 2 || cols < 2) throw InvalidInput("square covering needs rows, cols >= 2");
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= kPi) {
        throw InvalidInput("invalid angle: square covering needs 0 < alpha < pi");
    }
    const double dx = 2.0 * std::sin(alpha / 2.0);
    const double dy = 2.0 * std::cos(alpha / 2.0);
    const cplx turn = std::polar(1.0, kPi / 4.0);

    std::vector<VertexRecord> vertices;
    auto add = [&](VertexKind kind, double x, double y) {
        const int id = static_cast<int>(vertices.size());
        vertices.push_back({id, kind, turn * cplx(x, y)});
        return id;
    };
    std::vector<int> spin(static_cast<std::size_t>(rows * cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            spin[static_cast<std::size_t>(i * cols + j)] = add(VertexKind::primal, j * dx, i * dy);
    // Dual vertex (i, j) sits at the centre of the cell above-right of spin (i, j);
    // i in [-1, rows-1], j in [-1, cols-1].
    std::vector<int> dual(static_cast<std::size_t>((rows + 1) * (cols + 1)));
    std::vector<int> boundary;
    for (int i = -1; i < rows; ++i) {
        for (int j = -1; j < cols; ++j) {
            const int id = add(VertexKind::dual, (j + 0.5) * dx, (i + 0.5) * dy);
            dual[static_cast<std::size_t>((i + 1) * (cols + 1) + (j + 1))] = id;
            if (i == -1 || j == -1 || i == rows - 1 || j == cols - 1) boundary.push_back(id);
        }
    }
    auto s = [&](int i, int j) { return spin[static_cast<std::size_t>(i * cols + j)]; };
    auto d = [&](int i, int j) { return dual[static_cast<std::size_t>((i + 1) * (cols + 1) + (j + 1))]; };

    std::vector<std::array<int, 4>> faces;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (j + 1 < cols) faces.push_back({s(i, j), d(i - 1, j), s(i, j + 1), d(i, j)});  // x-edge
            if (i + 1 < rows) faces.push_back({s(i, j), d(i, j), s(i + 1, j), d(i, j - 1)});  // y-edge
        }
    }
    return assemble_lattice(std::move(vertices), faces, {}, std::move(boundary));
}

namespace {

cplx circumcenter(cplx a, cplx b, cplx c) {
    const double d = 2.0 * (a.real() * (b.imag() - c.imag()) + b.real() * (c.imag() - a.imag()) +
                            c.real() * (a.imag() - b.imag()));
    const double a2 = std::norm(a), b2 = std::norm(b), c2 = std::norm(c);
    const double ux = (a2 * (b.imag() - c.imag()) + b2 * (c.imag() - a.imag()) + c2 * (a.imag() - b.imag())) / d;
    const double uy = (a2 * (c.real() - b.real()) + b2 * (a.real() - c.real()) + c2 * (b.real() - a.real())) / d;
    return {ux, uy};
}

struct TriangularFrame {
    std::array<double, 3> alphas{};
    cplx ea;
    cplx eb;

    cplx point(int i, int j) const { return static_cast<double>(i) * ea + static_cast<double>(j) * eb; }

    // up(i,j) = (i,j),(i+1,j),(i,j+1); down(i,j) = (i+1,j),(i+1,j+1),(i,j+1)
    std::array<std::pair<int, int>, 3> triangle(bool up, int i, int j) const {
        if (up) return {{{i, j}, {i + 1, j}, {i, j + 1}}};
        return {{{i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
    }
    cplx centre(bool up, int i, int j) const {
        const auto t = triangle(up, i, j);
        return circumcenter(point(t[0].first, t[0].second), point(t[1].first, t[1].second),
                            point(t[2].first, t[2].second));
    }
};

TriangularFrame make_frame(double alpha1, double alpha2) {
    TriangularFrame fr;
    fr.alphas = {alpha1, alpha2, kPi - alpha1 - alpha2};
    for (double a : fr.alphas) {
        if (!std::isfinite(a) || std::abs(a) >= kPi || std::abs(a) < 1e-9) {
            throw InvalidInput("degenerate triangle: rhombus angles must lie in (-pi, pi) \\ {0}");
        }
    }
    // Triangle angle opposite an edge of family i is (pi - alpha_i)/2; unit circumradius.
    const double t1 = (kPi - fr.alphas[0]) / 2.0;
    const double t2 = (kPi - fr.alphas[1]) / 2.0;
    const double t3 = (kPi - fr.alphas[2]) / 2.0;
    fr.ea = {2.0 * std::sin(t1), 0.0};
    fr.eb = std::polar(2.0 * std::sin(t2), t3);
    return fr;
}

// An edge of the triangular lattice with its two adjacent triangles.
struct TriEdge {
    std::pair<int, int> a, b;  // endpoints
    int family = 0;
    std::array<std::tuple<bool, int, int>, 2> tris;
    std::array<std::pair<int, int>, 2> thirds;  // third vertex of each triangle
};

std::vector<TriEdge> triangular_edges(int lo, int hi) {
    // Edges with both endpoints in [lo, hi]^2.
    std::vector<TriEdge> out;
    for (int i = lo; i <= hi; ++i) {
        for (int j = lo; j <= hi; ++j) {
            if (i + 1 <= hi)
                out.push_back({{i, j}, {i + 1, j}, 0, {{{true, i, j}, {false, i, j - 1}}}, {{{i, j + 1}, {i + 1, j - 1}}}});
            if (j + 1 <= hi)
                out.push_back({{i, j}, {i, j + 1}, 1, {{{true, i, j}, {false, i - 1, j}}}, {{{i + 1, j}, {i - 1, j + 1}}}});
            if (i + 1 <= hi && j + 1 <= hi)
                out.push_back({{i + 1, j}, {i, j + 1}, 2, {{{true, i, j}, {false, i, j}}}, {{{i, j}, {i + 1, j + 1}}}});
        }
    }
    return out;
}

}  // namespace

CoveringLattice build_triangular_covering(int size, double alpha1, double alpha2) {
    if (size < 1) throw InvalidInput("triangular covering needs size >= 1");
    const TriangularFrame fr = make_frame(alpha1, alpha2);

    std::vector<VertexRecord> vertices;
    std::map<std::pair<int, int>, int> spin;
    for (int i = 0; i <= size; ++i)
        for (int j = 0; j <= size; ++j) {
            const int id = static_cast<int>(vertices.size());
            vertices.push_back({id, VertexKind::primal, fr.point(i, j)});
            spin[{i, j}] = id;
        }
    std::map<std::tuple<bool, int, int>, int> dual;
    std::vector<int> boundary;
    auto inside = [size](std::pair<int, int> p) {
        return p.first >= 0 && p.second >= 0 && p.first <= size && p.second <= size;
    };
    auto dual_id = [&](const std::tuple<bool, int, int>& key) {
        auto it = dual.find(key);
        if (it != dual.end()) return it->second;
        const auto [up, i, j] = key;
        const int id = static_cast<int>(vertices.size());
        vertices.push_back({id, VertexKind::dual, fr.centre(up, i, j)});
        dual[key] = id;
        const auto tri = fr.triangle(up, i, j);
        if (!std::all_of(tri.begin(), tri.end(), inside)) boundary.push_back(id);
        return id;
    };

    std::vector<std::array<int, 4>> faces;
    std::vector<bool> folded;
    for (const auto& e : triangular_edges(0, size)) {
        const cplx pa = fr.point(e.a.first, e.a.second);
        const cplx pb = fr.point(e.b.first, e.b.second);
        const cplx third0 = fr.point(e.thirds[0].first, e.thirds[0].second);
        const bool first_right = cross(pb - pa, third0 - pa) < 0.0;
        const int dr = dual_id(e.tris[first_right ? 0 : 1]);
        const int dl = dual_id(e.tris[first_right ? 1 : 0]);
        faces.push_back({spin[e.a], dr, spin[e.b], dl});
        folded.push_back(fr.alphas[static_cast<std::size_t>(e.family)] < 0.0);
    }
    return assemble_lattice(std::move(vertices), faces, folded, std::move(boundary));
}

CoveringLattice build_honeycomb_covering(int size, double alpha1, double alpha2) {
    if (size < 1) throw InvalidInput("honeycomb covering needs size >= 1");
    const TriangularFrame fr = make_frame(alpha1, alpha2);
    for (double a : fr.alphas) {
        if (a <= 0.0) throw InvalidInput("degenerate triangle: honeycomb covering needs all alpha_i > 0");
    }
    std::vector<VertexRecord> vertices;
    std::map<std::tuple<bool, int, int>, int> centre;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            for (bool up : {true, false}) {
                const int id = static_cast<int>(vertices.size());
                vertices.push_back({id, VertexKind::primal, fr.centre(up, i, j)});
                centre[{up, i, j}] = id;
            }
    std::map<std::pair<int, int>, int> site;
    std::vector<int> boundary;
    auto site_id = [&](std::pair<int, int> p) {
        auto it = site.find(p);
        if (it != site.end()) return it->second;
        const int id = static_cast<int>(vertices.size());
        vertices.push_back({id, VertexKind::dual, fr.point(p.first, p.second)});
        site[p] = id;
        if (p.first == 0 || p.second == 0 || p.first == size || p.second == size) boundary.push_back(id);
        return id;
    };
    std::vector<std::array<int, 4>> faces;
    for (const auto& e : triangular_edges(0, size)) {
        auto t0 = centre.find(e.tris[0]);
        auto t1 = centre.find(e.tris[1]);
        if (t0 == centre.end() || t1 == centre.end()) continue;
        const cplx c0 = vertices[static_cast<std::size_t>(t0->second)].z;
        const cplx c1 = vertices[static_cast<std::size_t>(t1->second)].z;
        const cplx pa = fr.point(e.a.first, e.a.second);
        // Honeycomb faces are never folded, so D1 is the geometric right of P1 -> P2.
        const bool a_right = cross(c1 - c0, pa - c0) < 0.0;
        const int sa = site_id(e.a);
        const int sb = site_id(e.b);
        faces.push_back({t0->second, a_right ? sa : sb, t1->second, a_right ? sb : sa});
    }
    return assemble_lattice(std::move(vertices), faces, {}, std::move(boundary));
}

CoveringLattice build_multigrid_tiling(const LineArrangement& arr) {
    const std::size_t m = arr.angles.size();
    if (m < 2) throw InvalidInput("multigrid needs at least two families");
    if (arr.offsets.size() != m) throw InvalidInput("multigrid needs one offset per family");
    if (arr.extent < 0) throw InvalidInput("multigrid extent must be >= 0");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(std::sin(arr.angles[i] - arr.angles[j])) < 1e-9)
                throw InvalidInput("arrangement not simple: coincident family directions");

    std::vector<cplx> e(m);
    for (std::size_t l = 0; l < m; ++l) e[l] = std::polar(1.0, arr.angles[l]);
    const int ext = arr.extent;
    const int lines = 2 * ext + 1;

    std::map<std::vector<int>, int> index;
    std::vector<VertexRecord> vertices;
    auto vertex_id = [&](const std::vector<int>& key) {
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        cplx z = 0.0;
        int parity = 0;
        for (std::size_t l = 0; l < m; ++l) {
            z += static_cast<double>(key[l]) * e[l];
            parity += key[l];
        }
        const int id = static_cast<int>(vertices.size());
        vertices.push_back({id, (parity % 2 == 0) ? VertexKind::primal : VertexKind::dual, z});
        index[key] = id;
        return id;
    };

    std::vector<std::array<int, 4>> faces;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (int ki = -ext; ki <= ext; ++ki) {
                for (int kj = -ext; kj <= ext; ++kj) {
                    // x . e_i = ki + g_i and x . e_j = kj + g_j
                    const double ri = ki + arr.offsets[i];
                    const double rj = kj + arr.offsets[j];
                    const double det = e[i].real() * e[j].imag() - e[i].imag() * e[j].real();
                    const cplx x((ri * e[j].imag() - rj * e[i].imag()) / det,
                                 (e[i].real() * rj - e[j].real() * ri) / det);
                    std::vector<int> key(m, 0);
                    for (std::size_t l = 0; l < m; ++l) {
                        if (l == i || l == j) continue;
                        const double t = x.real() * e[l].real() + x.imag() * e[l].imag() - arr.offsets[l];
                        const double nearest = std::round(t);
                        if (std::abs(t - nearest) < 1e-9 && std::abs(nearest) <= ext) {
                            throw InvalidInput("triple point in line arrangement; perturb offsets");
                        }
                        key[l] = std::clamp(static_cast<int>(std::floor(t)) + ext + 1, 0, lines);
                    }
                    std::array<int, 4> ids{};
                    const std::array<std::pair<int, int>, 4> steps = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
                    for (std::size_t c = 0; c < 4; ++c) {
                        key[i] = ki + ext + steps[c].first;
                        key[j] = kj + ext + steps[c].second;
                        ids[c] = vertex_id(key);
                    }
                    // ids in polygon order v00, v10, v11, v01; make it counterclockwise.
                    if (cross(e[i], e[j]) < 0.0) std::swap(ids[1], ids[3]);
                    if (vertices[static_cast<std::size_t>(ids[0])].kind == VertexKind::dual) {
                        std::rotate(ids.begin(), ids.begin() + 1, ids.end());
                    }
                    faces.push_back(ids);
                }
            }
        }
    }
    CoveringLattice lat = assemble_lattice(std::move(vertices), faces, {}, {});
    const auto sums = vertex_angle_sums(lat);
    for (int d : lat.dual_vertices())
        if (sums[static_cast<std::size_t>(d)] < 2.0 * kPi - 1e-9) lat.boundary.push_back(d);
    return lat;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> incident_faces(const CoveringLattice& lat, int v) {
    std::vector<int> out;
    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
        const auto& c = lat.faces[f].corners;
        if (std::find(c.begin(), c.end(), v) != c.end()) out.push_back(static_cast<int>(f));
    }
    return out;
}

bool is_flippable(const CoveringLattice& lat, int v, const std::vector<int>& faces, const std::vector<double>& sums) {
    if (faces.size() != 3) return false;
    if (lat.vertex(v).kind == VertexKind::dual && lat.is_boundary(v)) return false;
    for (int f : faces)
        if (lat.faces[static_cast<std::size_t>(f)].folded()) return false;
    return std::abs(sums[static_cast<std::size_t>(v)] - 2.0 * kPi) < 1e-9;
}

}  // namespace

std::vector<int> flippable_vertices(const CoveringLattice& lat) {
    const auto sums = vertex_angle_sums(lat);
    std::vector<int> out;
    for (const auto& v : lat.vertices)
        if (is_flippable(lat, v.id, incident_faces(lat, v.id), sums)) out.push_back(v.id);
    return out;
}

std::array<int, 3> hexagon_faces(const CoveringLattice& lat, int vertex) {
    const auto faces = incident_faces(lat, vertex);
    if (!is_flippable(lat, vertex, faces, vertex_angle_sums(lat))) {
        throw InvalidInput("vertex is not the centre of a flippable hexagon");
    }
    return {faces[0], faces[1], faces[2]};
}

CoveringLattice hexagon_flip(const CoveringLattice& lat, std::array<int, 3> faces) {
    for (int f : faces)
        if (f < 0 || f >= static_cast<int>(lat.faces.size())) throw InvalidInput("face id out of range");
    if (faces[0] == faces[1] || faces[1] == faces[2] || faces[0] == faces[2]) {
        throw InvalidInput("faces do not form a flippable hexagon: repeated face");
    }
    // The centre is the one vertex shared by all three faces.
    int centre = -1;
    for (int v : lat.faces[static_cast<std::size_t>(faces[0])].corners) {
        bool shared = true;
        for (int k = 1; k < 3; ++k) {
            const auto& c = lat.faces[static_cast<std::size_t>(faces[static_cast<std::size_t>(k)])].corners;
            shared = shared && std::find(c.begin(), c.end(), v) != c.end();
        }
        if (shared) {
            if (centre != -1) throw InvalidInput("faces do not form a flippable hexagon");
            centre = v;
        }
    }
    if (centre == -1) throw InvalidInput("faces do not form a flippable hexagon: no common vertex");
    auto around = incident_faces(lat, centre);
    std::sort(around.begin(), around.end());
    std::array<int, 3> sorted = faces;
    std::sort(sorted.begin(), sorted.end());
    if (!std::equal(around.begin(), around.end(), sorted.begin(), sorted.end()) ||
        !is_flippable(lat, centre, around, vertex_angle_sums(lat))) {
        throw InvalidInput("faces do not form a flippable hexagon around a degree-3 vertex");
    }

    const cplx zc = lat.vertex(centre).z;
    // Each old face: (neighbour a, opposite, neighbour b) as seen from the centre.
    std::map<int, cplx> step;  // neighbour id -> unit vector from the centre
    std::map<std::pair<int, int>, int> opposite;
    for (int f : faces) {
        const auto& c = lat.faces[static_cast<std::size_t>(f)].corners;
        const auto pos = static_cast<std::size_t>(std::find(c.begin(), c.end(), centre) - c.begin());
        const int na = c[(pos + 1) % 4];
        const int op = c[(pos + 2) % 4];
        const int nb = c[(pos + 3) % 4];
        step[na] = lat.vertex(na).z - zc;
        step[nb] = lat.vertex(nb).z - zc;
        opposite[{std::min(na, nb), std::max(na, nb)}] = op;
    }
    if (step.size() != 3 || opposite.size() != 3) throw InvalidInput("faces do not form a hexagon");

    std::vector<VertexRecord> vertices = lat.vertices;
    cplx shift = 0.0;
    for (const auto& [id, u] : step) shift += u;
    auto& moved = vertices[static_cast<std::size_t>(centre)];
    moved.z = zc + shift;
    moved.kind = moved.kind == VertexKind::primal ? VertexKind::dual : VertexKind::primal;

    std::vector<std::array<int, 4>> corners;
    std::vector<bool> folded;
    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
        if (std::find(faces.begin(), faces.end(), static_cast<int>(f)) != faces.end()) continue;
        corners.push_back(lat.faces[f].corners);
        folded.push_back(lat.faces[f].folded());
    }
    std::vector<int> nbrs;
    for (const auto& [id, u] : step) nbrs.push_back(id);
    for (std::size_t k = 0; k < 3; ++k) {
        const int nc = nbrs[k];
        const int na = nbrs[(k + 1) % 3];
        const int nb = nbrs[(k + 2) % 3];
        const int o_bc = opposite.at({std::min(nb, nc), std::max(nb, nc)});
        const int o_ac = opposite.at({std::min(na, nc), std::max(na, nc)});
        std::array<int, 4> poly = {centre, o_bc, nc, o_ac};
        std::array<cplx, 4> z;
        for (std::size_t c = 0; c < 4; ++c) z[c] = vertices[static_cast<std::size_t>(poly[c])].z;
        if (signed_area(z) < 0.0) std::swap(poly[1], poly[3]);
        if (vertices[static_cast<std::size_t>(poly[0])].kind == VertexKind::dual) {
            std::rotate(poly.begin(), poly.begin() + 1, poly.end());
        }
        corners.push_back(poly);
        folded.push_back(false);
    }
    return assemble_lattice(std::move(vertices), corners, folded, lat.boundary);
}

bool lattices_equivalent(const CoveringLattice& a, const CoveringLattice& b, double tol) {
    auto key = [tol](cplx z) {
        return std::pair{std::llround(z.real() / tol), std::llround(z.imag() / tol)};
    };
    using Key = std::pair<long long, long long>;
    auto vertex_set = [&](const CoveringLattice& l) {
        std::vector<std::pair<Key, int>> out;
        for (const auto& v : l.vertices) out.push_back({key(v.z), v.kind == VertexKind::primal ? 0 : 1});
        std::sort(out.begin(), out.end());
        return out;
    };
    auto face_set = [&](const CoveringLattice& l) {
        std::vector<std::array<Key, 4>> out;
        for (const auto& f : l.faces) {
            std::array<Key, 4> k{};
            for (std::size_t c = 0; c < 4; ++c) k[c] = key(f.z[c]);
            std::sort(k.begin(), k.end());
            out.push_back(k);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto boundary_set = [&](const CoveringLattice& l) {
        std::vector<Key> out;
        for (int id : l.boundary) out.push_back(key(l.vertex(id).z));
        std::sort(out.begin(), out.end());
        return out;
    };
    return vertex_set(a) == vertex_set(b) && face_set(a) == face_set(b) && boundary_set(a) == boundary_set(b);
}

}  // namespace parafermion
