#include <doctest.h>

#include <cmath>

#include "parafermion/enumeration.hpp"

using namespace parafermion;

namespace {

// Id layout of build_square_covering: spins row-major, then the (rows+1) x (cols+1)
// dual grid with dual (i, j) at the cell centre above-right of spin (i, j).
struct SquareIds {
    int rows;
    int cols;
    int spin(int i, int j) const { return i * cols + j; }
    int dual(int i, int j) const { return rows * cols + (i + 1) * (cols + 1) + (j + 1); }
};

CoveringLattice single_edge(double alpha) {
    const auto f = canonical_rhombus(alpha);
    std::vector<VertexRecord> v = {{0, VertexKind::primal, f.z[0]},
                                   {1, VertexKind::dual, f.z[1]},
                                   {2, VertexKind::primal, f.z[2]},
                                   {3, VertexKind::dual, f.z[3]}};
    return assemble_lattice(v, {{0, 1, 2, 3}}, {false}, {1, 3});
}

}  // namespace

TEST_CASE("partition function on small graphs") {
    const auto edge = single_edge(1.0);
    for (int n = 2; n <= 5; ++n) {
        const auto w = critical_weights(edge, n);
        CHECK(partition_function(edge, w) == doctest::Approx(n * n).epsilon(1e-14));
    }
    const auto sq = build_square_covering(2, 2, kPi / 2);
    const double x = 0.37;
    const auto w = uniform_weights(sq, WeightVector({1.0, x}));
    CHECK(partition_function(sq, w) == doctest::Approx(16 * (1 + std::pow(x, 4))).epsilon(1e-14));
    const auto free = uniform_weights(sq, WeightVector::trivial(3));
    CHECK(partition_function(sq, free) == doctest::Approx(81.0).epsilon(1e-14));
    CHECK(configuration_count(sq, 3) == 81);
}

TEST_CASE("partition function is reproducible across thread counts") {
    const auto sq = build_square_covering(3, 4, kPi / 2);
    const auto w = critical_weights(sq, 3);
    const double z1 = partition_function(sq, w, {10'000'000, 1});
    CHECK(partition_function(sq, w, {10'000'000, 2}) == z1);
    CHECK(partition_function(sq, w, {10'000'000, 8}) == z1);
}

TEST_CASE("enumeration budget") {
    const auto sq = build_square_covering(4, 4, kPi / 2);
    const auto w = critical_weights(sq, 3);
    CHECK_THROWS_AS(partition_function(sq, w), BudgetExceeded);
    CHECK_THROWS_AS(partition_function(sq, w, {1000, 1}), BudgetExceeded);
    const auto big = build_square_covering(8, 8, kPi / 2);
    CHECK(configuration_count(big, 5) == UINT64_MAX);
}

TEST_CASE("disorder strings") {
    const SquareIds id{3, 3};
    const auto sq = build_square_covering(3, 3, kPi / 2);
    const int anchor = id.dual(1, 1);
    CHECK_FALSE(sq.is_boundary(anchor));
    const auto path = route_to_boundary(sq, anchor);
    CHECK(path.front() == anchor);
    CHECK(sq.is_boundary(path.back()));
    CHECK(static_cast<int>(path.size()) - 1 == boundary_distances(sq)[static_cast<std::size_t>(anchor)]);

    const DisorderString s(sq, 3, 1, path);
    CHECK(s.crossings().size() == path.size() - 1);
    for (const auto& c : s.crossings()) CHECK((c.sign == 1 || c.sign == -1));

    // walking out and straight back cancels
    const DisorderString there_and_back(sq, 3, 1, {anchor, id.dual(1, 0), anchor, id.dual(0, 1), id.dual(-1, 1)});
    const auto shifts = there_and_back.edge_shifts(sq.primal_edges.size());
    int nonzero = 0;
    for (int t : shifts) nonzero += t != 0;
    CHECK(nonzero == 2);

    CHECK_THROWS_AS(DisorderString(sq, 3, 1, {anchor}), InvalidInput);
    CHECK_THROWS_AS(DisorderString(sq, 3, 1, {anchor, id.dual(-1, 1)}), InvalidInput);
    CHECK_THROWS_AS(DisorderString(sq, 3, 1, {id.spin(1, 1), id.dual(-1, 1)}), InvalidInput);
    CHECK_THROWS_AS(DisorderString(sq, 3, 1, {}), InvalidInput);
    CHECK_THROWS_AS(route_to_boundary(sq, id.spin(0, 0)), InvalidInput);
}

TEST_CASE("correlators") {
    const SquareIds id{3, 3};
    const auto sq = build_square_covering(3, 3, kPi / 2);
    const auto w2 = critical_weights(sq, 2);
    const DisorderString mu(sq, 2, 1, route_to_boundary(sq, id.dual(1, 1)));

    const auto empty = correlator(sq, w2, {}, {});
    CHECK(std::abs(empty.value - 1.0) < 1e-14);
    CHECK(empty.z == doctest::Approx(partition_function(sq, w2)).epsilon(1e-14));

    const auto dis = correlator(sq, w2, {mu}, {});
    CHECK(dis.value.real() > 0.0);
    CHECK(dis.value.real() < 1.0);
    CHECK(std::abs(dis.value.imag()) < 1e-14);

    const auto w3 = critical_weights(sq, 3);
    const auto lone = correlator(sq, w3, {}, {{id.spin(1, 1), 1}});
    CHECK_FALSE(lone.charge_neutral);
    CHECK(std::abs(lone.value) < 1e-14);

    const auto pair = correlator(sq, w3, {}, {{id.spin(0, 0), 1}, {id.spin(2, 2), 2}});
    CHECK(pair.charge_neutral);
    CHECK(pair.value.real() > 0.0);
    CHECK(std::abs(pair.value.imag()) < 1e-14);
    // spin-spin correlation decays with distance
    const auto near = correlator(sq, w3, {}, {{id.spin(0, 0), 1}, {id.spin(0, 1), 2}});
    CHECK(near.value.real() > pair.value.real());
}

TEST_CASE("face sums vanish at criticality") {
    const auto sq = build_square_covering(3, 3, kPi / 2);
    for (int n : {2, 3}) {
        const auto w = critical_weights(sq, n);
        const auto bent = perturb_weights(w, 1, 0.05);
        for (int m = 1; m < n; ++m)
            for (int f = 0; f < static_cast<int>(sq.faces.size()); ++f) {
                const int spect = primal_vertices_off_face(sq, f).front();
                const auto r = face_sum_check(sq, w, f, m, {{spect, n - m}});
                CHECK(r.relative < 1e-10);
                CHECK(r.scale > 0.0);
                CHECK(sq.is_boundary(r.tail.back()));
                if (r.interior) CHECK(face_sum_check(sq, bent, f, m, {{spect, n - m}}).relative > 1e-3);
            }
    }
}

TEST_CASE("face sums on a triangular lattice") {
    const auto tri = build_triangular_covering(2, 1.1, 0.9);
    const auto w = critical_weights(tri, 3);
    for (int f = 0; f < static_cast<int>(tri.faces.size()); ++f) {
        const int spect = primal_vertices_off_face(tri, f).front();
        CHECK(face_sum_check(tri, w, f, 1, {{spect, 2}}).relative < 1e-10);
    }
}

TEST_CASE("spectators on the face are rejected") {
    const auto sq = build_square_covering(2, 2, kPi / 2);
    const auto w = critical_weights(sq, 3);
    CHECK_THROWS_AS(face_sum_check(sq, w, 0, 1, {{sq.faces[0].p1(), 2}}), InvalidInput);
    CHECK_THROWS_AS(face_sum_check(sq, w, 99, 1, {}), InvalidInput);
}

TEST_CASE("configuration-level identity") {
    const auto sq = build_square_covering(2, 3, kPi / 2);
    for (int n : {2, 3}) {
        const auto w = critical_weights(sq, n);
        for (int f = 0; f < static_cast<int>(sq.faces.size()); ++f) {
            const auto r = configuration_identity_check(sq, w, f, 1, {});
            CHECK(r.max_relative < 1e-12);
            CHECK(r.config_count == configuration_count(sq, n));
        }
        CHECK(configuration_identity_check(sq, perturb_weights(w, 1, 0.05), 0, 1, {}).max_relative > 1e-3);
    }
}

TEST_CASE("string deformation and the monodromy phase") {
    const SquareIds id{3, 3};
    const auto sq = build_square_covering(3, 3, kPi / 2);
    const auto w = critical_weights(sq, 3);
    const std::vector<int> short_path = {id.dual(0, 0), id.dual(-1, 0)};
    const std::vector<int> around = {id.dual(0, 0), id.dual(1, 0), id.dual(1, 1), id.dual(0, 1), id.dual(-1, 1)};

    // the loop between the paths encloses spins (0,1) and (1,1); no charge inside
    const auto same = path_independence_check(sq, w, 1, short_path, around, {{id.spin(0, 0), 1}, {id.spin(2, 2), 2}});
    CHECK(same.neutral);
    CHECK(same.gauge == 0);
    CHECK(same.deviation < 1e-10);

    // unit charge inside: the paths differ by a cube root of unity
    const auto twisted = path_independence_check(sq, w, 1, short_path, around, {{id.spin(1, 1), 1}, {id.spin(0, 0), 2}});
    CHECK(twisted.gauge != 0);
    CHECK(twisted.deviation < 1e-10);
    CHECK(std::abs(twisted.value_a) > 1e-6);

    CHECK_THROWS_AS(path_independence_check(sq, w, 1, short_path, {id.dual(1, 1), id.dual(1, 2)}, {}), InvalidInput);
}
