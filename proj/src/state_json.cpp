#include "bellpair/state_json.hpp"

#include <cstdio>

#include "bellpair/errors.hpp"

namespace bellpair {

namespace {

nlohmann::json complex_pair(const cdouble& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

cdouble parse_pair(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("state JSON: matrix entries must be [re, im] number pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json state_to_json(const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) row.push_back(complex_pair(rho.mat()(i, j)));
    rows.push_back(row);
  }
  return {{"rho", rows}};
}

DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("rho"))
    throw ParseError("state JSON: expected an object with key \"rho\"");
  const auto& rows = j["rho"];
  if (!rows.is_array() || rows.size() != 4)
    throw ParseError("state JSON: \"rho\" must be a 4x4 matrix");
  Mat4c m;
  for (int r = 0; r < 4; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 4)
      throw ParseError("state JSON: \"rho\" must be a 4x4 matrix");
    for (int c = 0; c < 4; ++c)
      m(r, c) = parse_pair(row[static_cast<std::size_t>(c)]);
  }
  return DensityMatrix::from_matrix(m, tol);
}

DensityMatrix state_from_string(const std::string& text, const Tolerances& tol) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("state JSON: ") + e.what());
  }
  return state_from_json(j, tol);
}

nlohmann::json mat2_to_json(const Mat2c& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 2; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 2; ++j) row.push_back(complex_pair(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string region_csv(const std::vector<RegionRecord>& records) {
  std::string out = "kind,C,beta,purity,entropy\n";
  char line[192];
  for (const RegionRecord& r : records) {
    std::snprintf(line, sizeof line, "%s,%.14e,%.14e,%.14e,%.14e\n",
                  region_kind_name(r.kind), r.c, r.beta, r.purity, r.entropy);
    out += line;
  }
  return out;
}

}  // namespace bellpair
