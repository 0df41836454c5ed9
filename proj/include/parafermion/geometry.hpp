#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parafermion/core.hpp"

namespace parafermion {

enum class VertexKind { primal, dual };

const char* to_string(VertexKind kind);

struct VertexRecord {
    int id = 0;
    VertexKind kind = VertexKind::primal;
    cplx z;
};

/// One quadrilateral face of the covering lattice, corners (P1, D1, P2, D2).
///
/// P1 lies to the left of the dual step D1 -> D2 that crosses the primal edge
/// (P1, P2). For an ordinary face that is the counterclockwise order. A folded face
/// (negative opening angle, from an obtuse triangle) keeps the same topological
/// labelling, so geometrically its corners run clockwise.
struct RhombusGeometry {
    std::array<int, 4> corners{};
    std::array<cplx, 4> z{};
    /// Signed opening angle at the primal corners; negative iff folded.
    double alpha = 0.0;
    /// arg(D - P) in [-pi, pi) for the edges (P1,D1), (P2,D1), (P2,D2), (P1,D2).
    std::array<double, 4> edge_thetas{};
    /// Directed sides P1->D1, D1->P2, P2->D2, D2->P1.
    std::array<cplx, 4> edge_deltas{};

    int p1() const { return corners[0]; }
    int d1() const { return corners[1]; }
    int p2() const { return corners[2]; }
    int d2() const { return corners[3]; }
    bool folded() const { return alpha < 0.0; }

    /// Unfolded direction of the dual step D1 -> D2; the string crossing this face
    /// runs along it and the parafermion phases are measured relative to it.
    cplx string_direction() const { return (folded() ? -1.0 : 1.0) * (z[3] - z[1]); }

    /// The same face relabelled (P2, D2, P1, D1): string crossing reversed.
    RhombusGeometry reversed() const;
};

/// Builds the derived fields from corner positions. The opening angle is measured at
/// P1 and carries a negative sign when `folded`.
RhombusGeometry make_face(std::array<int, 4> ids, std::array<cplx, 4> z, bool folded = false);

/// A free-standing unit rhombus with opening angle alpha at the primal corners,
/// primal diagonal along `rotation`, centred at `center`. Corner ids are 0..3.
RhombusGeometry canonical_rhombus(double alpha, double rotation = 0.0, cplx center = 0.0);

/// Empty when the face satisfies the rhombus invariants to `tol` (relative to side length).
std::vector<std::string> rhombus_violations(const RhombusGeometry& face, double tol = 1e-10);

struct PrimalEdge {
    int p1 = 0;
    int p2 = 0;
    int face = 0;
};

/// Primal and dual vertices, the bipartite covering edges, one rhombic face per
/// primal edge (faces[i] belongs to primal_edges[i]) and the dual vertices on which
/// disorder strings may terminate.
struct CoveringLattice {
    std::vector<VertexRecord> vertices;
    std::vector<std::pair<int, int>> edges;  // (primal id, dual id)
    std::vector<RhombusGeometry> faces;
    std::vector<PrimalEdge> primal_edges;
    std::vector<int> boundary;  // sorted dual ids

    std::vector<int> primal_vertices() const;
    std::vector<int> dual_vertices() const;
    std::size_t primal_count() const;
    bool is_boundary(int dual_id) const;
    const VertexRecord& vertex(int id) const { return vertices.at(static_cast<std::size_t>(id)); }
};

/// Assembles a lattice from vertices and faces given as corner ids (P1, D1, P2, D2).
/// Covering edges are the deduplicated face sides.
CoveringLattice assemble_lattice(std::vector<VertexRecord> vertices,
                                 const std::vector<std::array<int, 4>>& face_corners,
                                 const std::vector<bool>& folded, std::vector<int> boundary);

/// Every violated lattice invariant, empty if none: rhombus faces, bipartiteness,
/// primal edge / face bijection, theta convention, boundary kinds.
std::vector<std::string> lattice_violations(const CoveringLattice& lat, double tol = 1e-10);

/// True when the interiors of two unfolded faces intersect (sampled test).
bool faces_overlap(const CoveringLattice& lat, double tol = 1e-9);

/// Dual graph: for each dual vertex, (neighbour, face) pairs, one per face on which
/// it is a dual corner.
std::vector<std::vector<std::pair<int, int>>> dual_adjacency(const CoveringLattice& lat);

/// Sum of interior face angles around every vertex (2 pi for interior vertices).
std::vector<double> vertex_angle_sums(const CoveringLattice& lat);

// ---------------------------------------------------------------------------
// Builders

/// rows x cols spins on a rectangular grid embedded so that y-direction edges sit in
/// alpha-rhombi and x-direction edges in (pi - alpha)-rhombi; a ring of exterior dual
/// vertices closes every boundary rhombus and forms the string boundary. The whole
/// embedding is turned by pi/4 so alpha = pi/2 gives axis-aligned covering edges.
CoveringLattice build_square_covering(int rows, int cols, double alpha);

/// Triangular lattice of (size+1)^2 spins; dual vertices at triangle circumcenters.
/// alpha1, alpha2 and alpha3 = pi - alpha1 - alpha2 are the rhombus angles of the
/// three edge directions (triangle angles (pi - alpha_i)/2). A negative alpha3 means
/// an obtuse triangle and folded faces.
CoveringLattice build_triangular_covering(int size, double alpha1, double alpha2);

/// The honeycomb lattice on the circumcenters of a size x size triangular patch;
/// faces are those of the triangular covering with primal and dual exchanged, so
/// the primal opening angles are pi - alpha_i.
CoveringLattice build_honeycomb_covering(int size, double alpha1, double alpha2);

struct LineArrangement {
    std::vector<double> angles;   // edge directions of the tiling, distinct mod pi
    std::vector<double> offsets;  // one per family
    int extent = 0;               // grid lines k = -extent..extent in every family
};

/// De Bruijn dual of a finite simple line arrangement: one unit rhombus per pair of
/// crossing lines, vertices 2-coloured by index parity (even = primal).
CoveringLattice build_multigrid_tiling(const LineArrangement& arrangement);

/// Interior vertices of degree 3 whose three faces tile a hexagon.
std::vector<int> flippable_vertices(const CoveringLattice& lat);

/// The three faces around a flippable vertex.
std::array<int, 3> hexagon_faces(const CoveringLattice& lat, int vertex);

/// Retiles the hexagon formed by three faces around a common degree-3 vertex: the
/// centre vertex moves to the opposite point and changes kind, so the primal vertex
/// count changes by one. Vertex ids are preserved.
CoveringLattice hexagon_flip(const CoveringLattice& lat, std::array<int, 3> faces);

/// Lattices equal up to vertex/face order: same kinds at the same positions, same
/// faces (as corner position sets), same boundary positions.
bool lattices_equivalent(const CoveringLattice& a, const CoveringLattice& b, double tol = 1e-9);

}  // namespace parafermion
