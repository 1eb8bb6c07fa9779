#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "lumpkit/dynamics.hpp"
#include "lumpkit/eigensystem.hpp"
#include "lumpkit/lumping.hpp"
#include "lumpkit/model.hpp"
#include "lumpkit/realizer.hpp"

namespace lumpkit {

using nlohmann::json;

// Model schema: {"species":[...], "A":[[...]], "b":[...], "y":[...]} with
// row-major A; "y" may be omitted on input (defaults to all ones).
json to_json(const CompartmentalModel& model);
CompartmentalModel model_from_json(const json& j);

// Eigen-system schema: {"pairs":[{"lambda":[re,im], "vector":[[re,im],...]}]}.
json to_json(const EigenSystem& es);
EigenSystem eigensystem_from_json(const json& j);

json to_json(const KineticReport& report);

json to_json(const Matrix& m);
json to_json(const CMatrix& m);
json to_json(const Vector& v);
json to_json(const CVector& v);

// Accepts [[...]] with entries either numbers or [re,im] pairs.
CMatrix cmatrix_from_json(const json& j);
Matrix matrix_from_json(const json& j);
bool json_matrix_is_complex(const json& j);

json to_json(const LumpedModel& lumped, const Matrix& Q);
json to_json(const LumpedModelC& lumped, const CMatrix& Q);

json to_json(const Certificate<Real>& cert, std::uint64_t seed);
json to_json(const Certificate<Complex>& cert, std::uint64_t seed);

/// 17-significant-digit, locale-independent float formatting.
std::string format_double(double x);

void write_csv_trajectory(std::ostream& os, const Trajectory& trajectory,
                          std::uint64_t seed);
void write_csv_region(std::ostream& os, const std::vector<RegionCell>& cells,
                      std::uint64_t seed);

}  // namespace lumpkit
