#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bellpair/families.hpp"
#include "bellpair/qstate.hpp"

namespace bellpair {

// Shared wire format: {"rho": [[[re,im] x4] x4]}, row-major in the basis
// |00>, |01>, |10>, |11>. Parsing rejects any other shape.
nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j,
                              const Tolerances& tol = kTol);
DensityMatrix state_from_string(const std::string& text,
                                const Tolerances& tol = kTol);

// 2x2 complex matrix as [[[re,im] x2] x2] (filter factors).
nlohmann::json mat2_to_json(const Mat2c& m);

// Region CSV: header kind,C,beta,purity,entropy; 15 significant digits.
std::string region_csv(const std::vector<RegionRecord>& records);

}  // namespace bellpair
