#include "parafermion/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <thread>

namespace parafermion {

EdgeWeights critical_weights(const CoveringLattice& lat, int n) {
    EdgeWeights w;
    w.n = n;
    for (const auto& face : lat.faces) w.per_edge.push_back(fz_weights(n, face.alpha));
    return w;
}

EdgeWeights uniform_weights(const CoveringLattice& lat, const WeightVector& wv) {
    return {wv.modulus(), std::vector<WeightVector>(lat.faces.size(), wv)};
}

EdgeWeights perturb_weights(const EdgeWeights& w, int k, double delta) {
    EdgeWeights out{w.n, {}};
    for (const auto& e : w.per_edge) out.per_edge.push_back(e.perturbed(k, delta));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::map<std::pair<int, int>, int> dual_step_faces(const CoveringLattice& lat) {
    std::map<std::pair<int, int>, int> out;
    for (std::size_t f = 0; f < lat.faces.size(); ++f) {
        const auto& face = lat.faces[f];
        out.emplace(std::pair{std::min(face.d1(), face.d2()), std::max(face.d1(), face.d2())}, static_cast<int>(f));
    }
    return out;
}

bool is_dual(const CoveringLattice& lat, int id) {
    return id >= 0 && id < static_cast<int>(lat.vertices.size()) && lat.vertex(id).kind == VertexKind::dual;
}

}  // namespace

DisorderString::DisorderString(const CoveringLattice& lat, int n, int sector, std::vector<int> path)
    : n_(n), sector_(SectorIndex(n, sector).value()), path_(std::move(path)) {
    if (path_.empty()) throw InvalidInput("disorder string path is empty");
    for (int v : path_)
        if (!is_dual(lat, v)) throw InvalidInput("disorder string visits a non-dual vertex " + std::to_string(v));
    const auto steps = dual_step_faces(lat);
    for (std::size_t i = 1; i < path_.size(); ++i) {
        const int a = path_[i - 1];
        const int b = path_[i];
        auto it = steps.find({std::min(a, b), std::max(a, b)});
        if (it == steps.end()) {
            throw InvalidInput("disorder string steps between non-adjacent dual vertices " + std::to_string(a) +
                               " and " + std::to_string(b));
        }
        const auto& face = lat.faces[static_cast<std::size_t>(it->second)];
        crossings_.push_back({it->second, (face.d1() == a && face.d2() == b) ? 1 : -1});
    }
    if (!lat.is_boundary(path_.back())) throw InvalidInput("string not reaching boundary");
}

std::vector<int> DisorderString::edge_shifts(std::size_t edge_count) const {
    std::vector<int> t(edge_count, 0);
    for (const auto& c : crossings_) {
        auto& e = t.at(static_cast<std::size_t>(c.primal_edge));
        e = ((e + c.sign * sector_) % n_ + n_) % n_;
    }
    return t;
}

std::vector<int> boundary_distances(const CoveringLattice& lat) {
    std::vector<int> dist(lat.vertices.size(), -1);
    const auto adj = dual_adjacency(lat);
    std::deque<int> queue;
    for (int b : lat.boundary) {
        dist[static_cast<std::size_t>(b)] = 0;
        queue.push_back(b);
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const auto& [u, f] : adj[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(u)] == -1) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

namespace {

std::vector<int> route_with(const CoveringLattice& lat, const std::vector<int>& dist, int anchor) {
    if (!is_dual(lat, anchor)) throw InvalidInput("string anchor " + std::to_string(anchor) + " is not a dual vertex");
    if (dist[static_cast<std::size_t>(anchor)] < 0) throw InvalidInput("string routing impossible: no path to boundary");
    const auto adj = dual_adjacency(lat);
    std::vector<int> path{anchor};
    int v = anchor;
    while (dist[static_cast<std::size_t>(v)] > 0) {
        int next = std::numeric_limits<int>::max();
        for (const auto& [u, f] : adj[static_cast<std::size_t>(v)])
            if (dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(v)] - 1) next = std::min(next, u);
        path.push_back(next);
        v = next;
    }
    return path;
}

}  // namespace

std::vector<int> route_to_boundary(const CoveringLattice& lat, int anchor) {
    return route_with(lat, boundary_distances(lat), anchor);
}

std::uint64_t configuration_count(const CoveringLattice& lat, int n) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < lat.primal_count(); ++i) {
        if (count > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
            return std::numeric_limits<std::uint64_t>::max();
        count *= static_cast<std::uint64_t>(n);
    }
    return count;
}

// ---------------------------------------------------------------------------
// Enumeration engine.
//
// Spins are visited by a base-N odometer in a fixed vertex order. Each edge is
// attached to the later of its two endpoints, so the running weight product of a
// prefix is final once that prefix is fixed; every configuration's products depend
// on the configuration alone. The configuration space is cut into a fixed grid of
// chunks by the leading spins (independent of the worker count), each chunk is
// summed with compensated accumulation and the chunk sums are reduced in chunk order.
// Results are therefore bitwise identical for any number of threads.

namespace {

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

class Engine {
public:
    Engine(const CoveringLattice& lat, const EdgeWeights& w, const std::vector<std::vector<int>>& shift_tables,
           const EnumerationOptions& opt)
        : n_(w.n) {
        require_modulus(n_);
        if (w.per_edge.size() != lat.primal_edges.size()) {
            throw InvalidInput("edge weights do not match the lattice's primal edges");
        }
        for (const auto& e : w.per_edge)
            if (e.modulus() != n_) throw InvalidInput("edge weight modulus differs from N");
        const std::uint64_t count = configuration_count(lat, n_);
        if (count > opt.cap) {
            throw BudgetExceeded("enumeration needs N^V = " + std::to_string(n_) + "^" +
                                 std::to_string(lat.primal_count()) + " configurations, above the cap of " +
                                 std::to_string(opt.cap) + "; raise the cap to proceed");
        }
        level_of_.assign(lat.vertices.size(), -1);
        for (int v : lat.primal_vertices()) {
            level_of_[static_cast<std::size_t>(v)] = static_cast<int>(levels_);
            ++levels_;
        }
        level_edges_.resize(levels_);
        for (const auto& pe : lat.primal_edges) {
            const int a = level_of_[static_cast<std::size_t>(pe.p1)];
            const int b = level_of_[static_cast<std::size_t>(pe.p2)];
            // q = s_P1 - s_P2 seen from the later endpoint.
            if (a > b) level_edges_[static_cast<std::size_t>(a)].push_back({pe.face, b, 1});
            else level_edges_[static_cast<std::size_t>(b)].push_back({pe.face, a, -1});
        }
        tables_ = shift_tables.size();
        const std::size_t ne = lat.primal_edges.size();
        weight_.assign(tables_ * ne * static_cast<std::size_t>(n_), 0.0);
        for (std::size_t j = 0; j < tables_; ++j) {
            for (std::size_t e = 0; e < ne; ++e) {
                const int t = shift_tables[j].empty() ? 0 : shift_tables[j][e];
                for (int q = 0; q < n_; ++q)
                    weight_[(j * ne + e) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(q)] =
                        weight_eval(w.per_edge[e], q - t);
            }
        }
        edges_ = ne;
        std::uint64_t chunks = 1;
        while (split_ < levels_ && chunks < 64) {
            chunks *= static_cast<std::uint64_t>(n_);
            ++split_;
        }
        chunks_ = chunks;
        threads_ = std::max(1, opt.threads);
        configs_ = count;
    }

    int n() const { return n_; }
    std::size_t tables() const { return tables_; }
    std::uint64_t chunks() const { return chunks_; }
    std::uint64_t configs() const { return configs_; }
    int level(int vertex) const { return level_of_.at(static_cast<std::size_t>(vertex)); }

    // leaf(spins, products) for every configuration of the chunk.
    template <class Leaf>
    void walk(std::uint64_t chunk, Leaf&& leaf) const {
        const std::size_t nl = levels_;
        std::vector<int> spins(nl, 0);
        std::vector<double> prod((nl + 1) * tables_, 1.0);
        std::uint64_t c = chunk;
        for (std::size_t l = split_; l-- > 0;) {
            spins[l] = static_cast<int>(c % static_cast<std::uint64_t>(n_));
            c /= static_cast<std::uint64_t>(n_);
        }
        for (std::size_t l = 0; l < split_; ++l) extend(l, spins, prod);
        if (split_ == nl) {
            leaf(spins.data(), prod.data() + nl * tables_);
            return;
        }
        std::size_t l = split_;
        spins[l] = -1;
        while (true) {
            if (++spins[l] == n_) {
                if (l == split_) break;
                --l;
                continue;
            }
            extend(l, spins, prod);
            if (l + 1 == nl) {
                leaf(spins.data(), prod.data() + nl * tables_);
            } else {
                ++l;
                spins[l] = -1;
            }
        }
    }

    template <class Fn>
    void for_each_chunk(Fn&& fn) const {
        const auto workers = static_cast<std::uint64_t>(threads_) < chunks_ ? static_cast<std::uint64_t>(threads_) : chunks_;
        if (workers <= 1) {
            for (std::uint64_t c = 0; c < chunks_; ++c) fn(c);
            return;
        }
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (std::uint64_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < chunks_; c = next++) fn(c);
            });
        }
        for (auto& th : pool) th.join();
    }

private:
    struct LevelEdge {
        int edge;
        int other;
        int sign;
    };

    void extend(std::size_t l, const std::vector<int>& spins, std::vector<double>& prod) const {
        const int s = spins[l];
        for (std::size_t j = 0; j < tables_; ++j) {
            double p = prod[l * tables_ + j];
            for (const auto& le : level_edges_[l]) {
                const int other = spins[static_cast<std::size_t>(le.other)];
                const int q = ((le.sign > 0 ? s - other : other - s) % n_ + n_) % n_;
                p *= weight_[(j * edges_ + static_cast<std::size_t>(le.edge)) * static_cast<std::size_t>(n_) +
                             static_cast<std::size_t>(q)];
            }
            prod[(l + 1) * tables_ + j] = p;
        }
    }

    int n_;
    std::size_t levels_ = 0;
    std::size_t split_ = 0;
    std::size_t tables_ = 0;
    std::size_t edges_ = 0;
    std::uint64_t chunks_ = 1;
    std::uint64_t configs_ = 1;
    int threads_ = 1;
    std::vector<int> level_of_;
    std::vector<std::vector<LevelEdge>> level_edges_;
    std::vector<double> weight_;
};

struct Observable {
    std::size_t table = 0;
    std::vector<std::pair<int, int>> charges;  // (level, power)
};

struct Sums {
    double z = 0.0;
    std::vector<cplx> values;  // unnormalised
};

// Z from table 0 plus, per observable, sum over configurations of the table product
// times omega^{sum power * spin}. Phases are binned by residue so all accumulation is real.
Sums accumulate(const Engine& eng, const std::vector<Observable>& obs) {
    const int n = eng.n();
    const std::size_t width = 1 + obs.size() * static_cast<std::size_t>(n);
    std::vector<std::vector<double>> per_chunk(eng.chunks());
    eng.for_each_chunk([&](std::uint64_t chunk) {
        std::vector<Kahan> acc(width);
        eng.walk(chunk, [&](const int* spins, const double* prod) {
            acc[0].add(prod[0]);
            for (std::size_t k = 0; k < obs.size(); ++k) {
                long long r = 0;
                for (const auto& [lvl, power] : obs[k].charges) r += static_cast<long long>(power) * spins[lvl];
                const auto bin = static_cast<std::size_t>(((r % n) + n) % n);
                acc[1 + k * static_cast<std::size_t>(n) + bin].add(prod[obs[k].table]);
            }
        });
        std::vector<double> out(width);
        for (std::size_t i = 0; i < width; ++i) out[i] = acc[i].sum;
        per_chunk[chunk] = std::move(out);
    });
    std::vector<Kahan> total(width);
    for (const auto& chunk : per_chunk)
        for (std::size_t i = 0; i < width; ++i) total[i].add(chunk[i]);
    Sums s;
    s.z = total[0].sum;
    for (std::size_t k = 0; k < obs.size(); ++k) {
        cplx v = 0.0;
        for (int r = 0; r < n; ++r) v += omega(n, r) * total[1 + k * static_cast<std::size_t>(n) + static_cast<std::size_t>(r)].sum;
        s.values.push_back(v);
    }
    return s;
}

std::vector<int> combined_shifts(const std::vector<DisorderString>& strings, std::size_t edges, int n) {
    std::vector<int> t(edges, 0);
    for (const auto& s : strings) {
        const auto d = s.edge_shifts(edges);
        for (std::size_t e = 0; e < edges; ++e) t[e] = (t[e] + d[e]) % n;
    }
    return t;
}

std::vector<std::pair<int, int>> spectator_levels(const CoveringLattice& lat, const Engine& eng,
                                                  const std::vector<Spectator>& spectators) {
    std::vector<std::pair<int, int>> out;
    for (const auto& sp : spectators) {
        if (sp.vertex < 0 || sp.vertex >= static_cast<int>(lat.vertices.size()) ||
            lat.vertex(sp.vertex).kind != VertexKind::primal) {
            throw InvalidInput("spectator " + std::to_string(sp.vertex) + " is not a primal vertex");
        }
        out.emplace_back(eng.level(sp.vertex), sp.power);
    }
    return out;
}

bool neutral(const std::vector<Spectator>& spectators, int n) {
    long long total = 0;
    for (const auto& sp : spectators) total += sp.power;
    return ((total % n) + n) % n == 0;
}

}  // namespace

double partition_function(const CoveringLattice& lat, const EdgeWeights& w, const EnumerationOptions& opt) {
    const Engine eng(lat, w, {{}}, opt);
    return accumulate(eng, {}).z;
}

CorrelatorResult correlator(const CoveringLattice& lat, const EdgeWeights& w, const std::vector<DisorderString>& strings,
                            const std::vector<Spectator>& spectators, const EnumerationOptions& opt) {
    const std::size_t ne = lat.primal_edges.size();
    const Engine eng(lat, w, {{}, combined_shifts(strings, ne, w.n)}, opt);
    const Sums s = accumulate(eng, {{1, spectator_levels(lat, eng, spectators)}});
    CorrelatorResult r;
    r.z = s.z;
    r.value = s.values[0] / s.z;
    r.config_count = eng.configs();
    r.charge_neutral = neutral(spectators, w.n);
    return r;
}

namespace {

struct FacePlan {
    RhombusGeometry face;
    std::vector<int> tail;
    DisorderString s1;
    DisorderString s2;
    bool interior;
};

FacePlan plan_face(const CoveringLattice& lat, int n, int face, int m) {
    if (face < 0 || face >= static_cast<int>(lat.faces.size())) throw InvalidInput("face id out of range");
    const auto dist = boundary_distances(lat);
    RhombusGeometry f = lat.faces[static_cast<std::size_t>(face)];
    if (dist[static_cast<std::size_t>(f.d1())] < dist[static_cast<std::size_t>(f.d2())]) f = f.reversed();
    std::vector<int> tail = route_with(lat, dist, f.d2());
    std::vector<int> first{f.d1()};
    first.insert(first.end(), tail.begin(), tail.end());
    const bool interior = !lat.is_boundary(f.d1()) && !lat.is_boundary(f.d2());
    return {f, tail, DisorderString(lat, n, m, first), DisorderString(lat, n, m, tail), interior};
}

}  // namespace

FaceSumResult face_sum_check(const CoveringLattice& lat, const EdgeWeights& w, int face, int m,
                             const std::vector<Spectator>& spectators, const EnumerationOptions& opt) {
    const int n = w.n;
    const FacePlan plan = plan_face(lat, n, face, m);
    for (const auto& sp : spectators)
        if (sp.vertex == plan.face.p1() || sp.vertex == plan.face.p2())
            throw InvalidInput("spectators must lie off the face");
    const std::size_t ne = lat.primal_edges.size();
    const Engine eng(lat, w, {{}, plan.s1.edge_shifts(ne), plan.s2.edge_shifts(ne)}, opt);
    const auto spect = spectator_levels(lat, eng, spectators);
    auto with_spin = [&](int vertex) {
        auto c = spect;
        c.emplace_back(eng.level(vertex), m);
        return c;
    };
    // Edges (P1,D1), (P2,D1), (P2,D2), (P1,D2).
    const Sums s = accumulate(eng, {{1, with_spin(plan.face.p1())},
                                    {1, with_spin(plan.face.p2())},
                                    {2, with_spin(plan.face.p2())},
                                    {2, with_spin(plan.face.p1())}});
    const auto c = contour_coefficients(plan.face, n, m);
    FaceSumResult r;
    r.face = face;
    r.m = m;
    r.interior = plan.interior;
    r.oriented = plan.face;
    r.tail = plan.tail;
    r.config_count = eng.configs();
    for (std::size_t e = 0; e < 4; ++e) {
        r.terms[e] = c[e] * s.values[e] / s.z;
        r.residual += r.terms[e];
        r.scale = std::max(r.scale, std::abs(r.terms[e]));
    }
    r.relative = r.scale > 0.0 ? std::abs(r.residual) / r.scale : 0.0;
    return r;
}

IdentityResult configuration_identity_check(const CoveringLattice& lat, const EdgeWeights& w, int face, int m,
                                            const EnumerationOptions& opt) {
    const int n = w.n;
    const FacePlan plan = plan_face(lat, n, face, m);
    const std::size_t ne = lat.primal_edges.size();
    const Engine eng(lat, w, {{}, plan.s1.edge_shifts(ne), plan.s2.edge_shifts(ne)}, opt);
    const auto c = contour_coefficients(plan.face, n, m);
    std::vector<cplx> spin_phase(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) spin_phase[static_cast<std::size_t>(s)] = omega(n, static_cast<long long>(m) * s);
    const int l1 = eng.level(plan.face.p1());
    const int l2 = eng.level(plan.face.p2());
    std::vector<double> worst(eng.chunks(), 0.0);
    eng.for_each_chunk([&](std::uint64_t chunk) {
        double local = 0.0;
        eng.walk(chunk, [&](const int* spins, const double* prod) {
            const cplx a = spin_phase[static_cast<std::size_t>(spins[l1])];
            const cplx b = spin_phase[static_cast<std::size_t>(spins[l2])];
            const std::array<cplx, 4> t = {c[0] * a * prod[1], c[1] * b * prod[1], c[2] * b * prod[2], c[3] * a * prod[2]};
            const double mag = std::abs(t[0]) + std::abs(t[1]) + std::abs(t[2]) + std::abs(t[3]);
            if (mag > 0.0) local = std::max(local, std::abs(t[0] + t[1] + t[2] + t[3]) / mag);
        });
        worst[chunk] = local;
    });
    IdentityResult r;
    r.config_count = eng.configs();
    for (double v : worst) r.max_relative = std::max(r.max_relative, v);
    return r;
}

PathIndependenceResult path_independence_check(const CoveringLattice& lat, const EdgeWeights& w, int m,
                                               const std::vector<int>& path_a, const std::vector<int>& path_b,
                                               const std::vector<Spectator>& spectators,
                                               const EnumerationOptions& opt) {
    const int n = w.n;
    const DisorderString a(lat, n, m, path_a);
    const DisorderString b(lat, n, m, path_b);
    if (a.anchor() != b.anchor()) throw InvalidInput("paths must share their anchor");
    const std::size_t ne = lat.primal_edges.size();
    const Engine eng(lat, w, {{}, a.edge_shifts(ne), b.edge_shifts(ne)}, opt);
    const auto spect = spectator_levels(lat, eng, spectators);
    const Sums s = accumulate(eng, {{1, spect}, {2, spect}});
    PathIndependenceResult r;
    r.value_a = s.values[0] / s.z;
    r.value_b = s.values[1] / s.z;
    r.neutral = neutral(spectators, n);
    const double norm = std::abs(r.value_a) > 0.0 ? std::abs(r.value_a) : 1.0;
    r.deviation = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        const double d = std::abs(r.value_a - omega(n, j) * r.value_b) / norm;
        if (d < r.deviation) {
            r.deviation = d;
            r.gauge = j;
        }
    }
    return r;
}

std::vector<int> primal_vertices_off_face(const CoveringLattice& lat, int face) {
    const auto& f = lat.faces.at(static_cast<std::size_t>(face));
    std::vector<int> out;
    for (int v : lat.primal_vertices())
        if (v != f.p1() && v != f.p2()) out.push_back(v);
    return out;
}

}  // namespace parafermion
