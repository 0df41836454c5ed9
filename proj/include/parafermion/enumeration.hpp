#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "parafermion/core.hpp"
#include "parafermion/geometry.hpp"
#include "parafermion/holomorphy.hpp"

namespace parafermion {

/// One WeightVector per primal edge, indexed like CoveringLattice::primal_edges.
struct EdgeWeights {
    int n = 0;
    std::vector<WeightVector> per_edge;
};

/// Isoradial assignment: each primal edge gets fz_weights(N, alpha) of its face.
EdgeWeights critical_weights(const CoveringLattice& lat, int n);

/// The same coupling on every edge.
EdgeWeights uniform_weights(const CoveringLattice& lat, const WeightVector& w);

/// Copy with x_k (and x_{N-k}) of every edge shifted by delta.
EdgeWeights perturb_weights(const EdgeWeights& w, int k, double delta);

struct Crossing {
    int primal_edge = 0;
    int sign = 1;  // +1 when P1 is on the left of the dual step (step D1 -> D2)
};

/// A dual path from its anchor to a boundary dual vertex. Crossing the primal edge
/// with P1 on the left substitutes s_P1 -> omega^{-m} s_P1 in that edge's weight.
class DisorderString {
public:
    DisorderString(const CoveringLattice& lat, int n, int sector, std::vector<int> path);

    int sector() const { return sector_; }
    int anchor() const { return path_.front(); }
    const std::vector<int>& path() const { return path_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }

    /// Net shift t_e (mod N) per primal edge: the weight becomes W(omega^{q - t_e}).
    std::vector<int> edge_shifts(std::size_t edge_count) const;

private:
    int n_;
    int sector_;
    std::vector<int> path_;
    std::vector<Crossing> crossings_;
};

/// Breadth-first distance of every dual vertex to the boundary (-1 if unreachable or primal).
std::vector<int> boundary_distances(const CoveringLattice& lat);

/// Deterministic shortest dual path from `anchor` to the boundary.
std::vector<int> route_to_boundary(const CoveringLattice& lat, int anchor);

struct Spectator {
    int vertex = 0;  // primal vertex id
    int power = 1;   // insertion s^power
};

struct EnumerationOptions {
    std::uint64_t cap = 10'000'000;  // maximum N^V
    int threads = 1;
};

/// N^V for the lattice, saturating at UINT64_MAX.
std::uint64_t configuration_count(const CoveringLattice& lat, int n);

/// Z = sum over configurations of the product of edge weights.
double partition_function(const CoveringLattice& lat, const EdgeWeights& w, const EnumerationOptions& opt = {});

struct CorrelatorResult {
    cplx value;
    double z = 0.0;
    std::uint64_t config_count = 0;
    bool charge_neutral = true;  // spectator powers sum to 0 mod N
};

CorrelatorResult correlator(const CoveringLattice& lat, const EdgeWeights& w, const std::vector<DisorderString>& strings,
                            const std::vector<Spectator>& spectators, const EnumerationOptions& opt = {});

struct FaceSumResult {
    int face = 0;
    int m = 0;
    bool interior = false;              // neither dual corner on the boundary
    RhombusGeometry oriented;           // face as used: D2 is the corner nearer the boundary
    std::array<cplx, 4> terms{};        // c_e <s_P^m mu_D spectators>, edges (P1,D1),(P2,D1),(P2,D2),(P1,D2)
    std::vector<int> tail;              // dual path from D2 to the boundary, shared by both strings
    cplx residual;
    double scale = 0.0;                 // max |term|
    double relative = 0.0;              // |residual| / scale
    std::uint64_t config_count = 0;
};

/// Contour sum of the four parafermion correlators around one face. The string from
/// D1 steps across the face to D2 and then follows D2's string to the boundary.
FaceSumResult face_sum_check(const CoveringLattice& lat, const EdgeWeights& w, int face, int m,
                             const std::vector<Spectator>& spectators, const EnumerationOptions& opt = {});

struct IdentityResult {
    double max_relative = 0.0;  // max over configurations of |sum| / sum |term|
    std::uint64_t config_count = 0;
};

/// The face identity before normalisation, configuration by configuration.
IdentityResult configuration_identity_check(const CoveringLattice& lat, const EdgeWeights& w, int face, int m,
                                            const EnumerationOptions& opt = {});

struct PathIndependenceResult {
    cplx value_a;
    cplx value_b;
    int gauge = 0;  // best g = omega^gauge
    double deviation = 0.0;
    bool neutral = true;
};

PathIndependenceResult path_independence_check(const CoveringLattice& lat, const EdgeWeights& w, int m,
                                               const std::vector<int>& path_a, const std::vector<int>& path_b,
                                               const std::vector<Spectator>& spectators,
                                               const EnumerationOptions& opt = {});

/// Primal vertices that avoid the given face, lowest id first.
std::vector<int> primal_vertices_off_face(const CoveringLattice& lat, int face);

}  // namespace parafermion
