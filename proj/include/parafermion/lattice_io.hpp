#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "parafermion/geometry.hpp"

namespace parafermion {

/// A disorder string as stored on disk: sector and dual-vertex path from the anchor
/// to a boundary vertex.
struct StringSpec {
    int sector = 0;
    std::vector<int> path;
};

struct LatticeDocument {
    CoveringLattice lattice;
    std::vector<StringSpec> strings;
};

/// {vertices:[{id,kind,re,im}], edges:[[p,d]], primal_edges:[[p1,p2]], boundary:[d],
///  folded:[primal edge index], strings:[{sector,path}]}. "folded" and "strings" are
/// omitted when empty.
nlohmann::json lattice_to_json(const CoveringLattice& lat, const std::vector<StringSpec>& strings = {});

/// Faces are rebuilt from the two dual vertices shared by each primal edge and the
/// result is validated; any inconsistency throws InvalidInput.
LatticeDocument lattice_from_json(const nlohmann::json& doc);

void save_lattice(const std::string& path, const CoveringLattice& lat, const std::vector<StringSpec>& strings = {});
LatticeDocument load_lattice(const std::string& path);

struct SvgStyle {
    double scale = 40.0;  // pixels per unit edge length
    double margin = 0.5;  // in edge lengths
    bool label_vertices = false;
};

/// One polygon per face, covering edges, dashed primal edges, a circle per vertex
/// (class "primal" or "dual") and a dotted line per string segment.
std::string render_svg(const CoveringLattice& lat, const std::vector<StringSpec>& strings = {},
                       const SvgStyle& style = {});
void export_svg(const CoveringLattice& lat, const std::string& path, const std::vector<StringSpec>& strings = {},
                const SvgStyle& style = {});

}  // namespace parafermion
