#pragma once

#include <string>

#include <json.hpp>

#include "parafermion/enumeration.hpp"
#include "parafermion/holomorphy.hpp"

namespace parafermion {

nlohmann::json complex_json(cplx z);

nlohmann::json to_json(const RhombusGeometry& rh);
nlohmann::json to_json(const ResidualReport& rep);
nlohmann::json to_json(const OrientationSolution& sol);
nlohmann::json to_json(const WeightSolution& sol);
nlohmann::json to_json(const RigidityReport& rep);
nlohmann::json to_json(const StarTriangleResult& res);
nlohmann::json to_json(const CorrelatorResult& res);
nlohmann::json to_json(const FaceSumResult& res);
nlohmann::json to_json(const IdentityResult& res);
nlohmann::json to_json(const PathIndependenceResult& res);

/// q,re,im,abs, one row per sigma.
std::string to_csv(const ResidualReport& rep);
/// orientation,vector,k,value: the particular solution (vector = particular) and
/// each null basis vector (vector = null0, null1, ...), one row per free coupling.
std::string to_csv(const WeightSolution& sol);

}  // namespace parafermion
