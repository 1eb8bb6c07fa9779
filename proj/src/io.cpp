#include "lumpkit/io.hpp"

#include <cstdio>
#include <ostream>

namespace lumpkit {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2) return Complex(j[0].get<double>(), j[1].get<double>());
  throw DomainError(ErrorCode::InvalidArgument, "expected a number or an [re, im] pair");
}

template <typename Scalar>
json matrix_rows(const MatrixX<Scalar>& m);

template <>
json matrix_rows<Real>(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <>
json matrix_rows<Complex>(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& matrix_payload(const json& j) {
  if (j.is_object() && j.contains("Q")) return j.at("Q");
  return j;
}

}  // namespace

json to_json(const CompartmentalModel& model) {
  json j;
  j["species"] = model.species;
  j["A"] = matrix_rows<Real>(model.A);
  json b = json::array();
  for (Index i = 0; i < model.b.size(); ++i) b.push_back(model.b(i));
  j["b"] = std::move(b);
  json y = json::array();
  for (Index i = 0; i < model.y.size(); ++i) y.push_back(model.y(i));
  j["y"] = std::move(y);
  return j;
}

CompartmentalModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A"))
    throw DomainError(ErrorCode::InvalidArgument, "model JSON needs an \"A\" matrix");
  Matrix A = matrix_from_json(j.at("A"));
  const Index n = A.rows();

  Vector b = Vector::Zero(n);
  if (j.contains("b")) {
    const json& jb = j.at("b");
    if (static_cast<Index>(jb.size()) != n)
      throw DomainError(ErrorCode::InvalidArgument, "b length does not match A");
    for (Index i = 0; i < n; ++i) b(i) = jb[static_cast<size_t>(i)].get<double>();
  }
  Eigen::VectorXi y = Eigen::VectorXi::Ones(n);
  if (j.contains("y")) {
    const json& jy = j.at("y");
    if (static_cast<Index>(jy.size()) != n)
      throw DomainError(ErrorCode::InvalidArgument, "y length does not match A");
    for (Index i = 0; i < n; ++i) y(i) = jy[static_cast<size_t>(i)].get<int>();
  }
  std::vector<std::string> species;
  if (j.contains("species")) {
    species = j.at("species").get<std::vector<std::string>>();
  } else {
    for (Index i = 0; i < n; ++i) species.push_back("X" + std::to_string(i + 1));
  }
  return CompartmentalModel::make(std::move(species), std::move(A), std::move(b),
                                  std::move(y));
}

json to_json(const EigenSystem& es) {
  json pairs = json::array();
  for (const auto& pair : es.pairs) {
    json p;
    p["lambda"] = complex_to_json(pair.value);
    json vec = json::array();
    for (Index i = 0; i < pair.vector.size(); ++i)
      vec.push_back(complex_to_json(pair.vector(i)));
    p["vector"] = std::move(vec);
    pairs.push_back(std::move(p));
  }
  return json{{"pairs", std::move(pairs)}};
}

EigenSystem eigensystem_from_json(const json& j) {
  EigenSystem es;
  es.source = EigenSource::Numeric;
  for (const json& p : j.at("pairs")) {
    EigenPair pair;
    pair.value = complex_from_json(p.at("lambda"));
    const json& vec = p.at("vector");
    pair.vector.resize(static_cast<Index>(vec.size()));
    for (Index i = 0; i < pair.vector.size(); ++i)
      pair.vector(i) = complex_from_json(vec[static_cast<size_t>(i)]);
    es.pairs.push_back(std::move(pair));
  }
  assign_multiplicities(es);
  return es;
}

json to_json(const KineticReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back(json{{"condition", v.condition},
                              {"row", v.row},
                              {"col", v.col},
                              {"value", v.value}});
  return json{{"is_kinetic", report.is_kinetic},
              {"is_compartmental", report.is_compartmental},
              {"violations", std::move(violations)}};
}

json to_json(const Matrix& m) { return matrix_rows<Real>(m); }
json to_json(const CMatrix& m) { return matrix_rows<Complex>(m); }

json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

bool json_matrix_is_complex(const json& j) {
  for (const json& row : matrix_payload(j))
    for (const json& entry : row)
      if (entry.is_array()) return true;
  return false;
}

CMatrix cmatrix_from_json(const json& j) {
  const json& rows = matrix_payload(j);
  if (!rows.is_array() || rows.empty())
    throw DomainError(ErrorCode::InvalidArgument, "expected a non-empty 2D array");
  const Index nrows = static_cast<Index>(rows.size());
  const Index ncols = static_cast<Index>(rows[0].size());
  CMatrix m(nrows, ncols);
  for (Index i = 0; i < nrows; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (static_cast<Index>(row.size()) != ncols)
      throw DomainError(ErrorCode::InvalidArgument, "ragged matrix rows");
    for (Index jcol = 0; jcol < ncols; ++jcol)
      m(i, jcol) = complex_from_json(row[static_cast<size_t>(jcol)]);
  }
  return m;
}

Matrix matrix_from_json(const json& j) {
  CMatrix m = cmatrix_from_json(j);
  if (max_abs(m.imag()) > 0.0)
    throw DomainError(ErrorCode::InvalidArgument, "expected a real matrix");
  return m.real();
}

namespace {

template <typename Scalar>
json lumped_json(const LumpedModelT<Scalar>& lumped, const MatrixX<Scalar>& Q) {
  json j;
  j["A_hat"] = matrix_rows<Scalar>(lumped.A_hat);
  j["Q"] = matrix_rows<Scalar>(Q);
  j["Qbar"] = matrix_rows<Scalar>(lumped.Qbar.Qbar);
  j["residual"] = lumped.exactness_residual;
  j["kinetic"] = to_json(lumped.kinetic);
  j["b_hat"] = to_json(VectorX<Scalar>(lumped.b_hat));
  return j;
}

}  // namespace

json to_json(const LumpedModel& lumped, const Matrix& Q) { return lumped_json(lumped, Q); }
json to_json(const LumpedModelC& lumped, const CMatrix& Q) { return lumped_json(lumped, Q); }

namespace {

template <typename Scalar>
json certificate_json(const Certificate<Scalar>& cert, std::uint64_t seed) {
  json j;
  j["feasible"] = cert.feasible;
  j["P"] = cert.witness_P ? matrix_rows<Scalar>(*cert.witness_P) : json(nullptr);
  j["reason"] = cert.reason ? to_string(*cert.reason) : "";
  j["seed"] = seed;
  return j;
}

}  // namespace

json to_json(const Certificate<Real>& cert, std::uint64_t seed) {
  return certificate_json(cert, seed);
}
json to_json(const Certificate<Complex>& cert, std::uint64_t seed) {
  return certificate_json(cert, seed);
}

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

void write_csv_trajectory(std::ostream& os, const Trajectory& trajectory,
                          std::uint64_t seed) {
  os << "# seed=" << seed << "\n";
  os << "t";
  for (const auto& name : trajectory.model.species) os << "," << name;
  os << "\n";
  for (Index t = 0; t < trajectory.times.size(); ++t) {
    os << format_double(trajectory.times(t));
    for (Index i = 0; i < trajectory.states.cols(); ++i)
      os << "," << format_double(trajectory.states(t, i));
    os << "\n";
  }
}

void write_csv_region(std::ostream& os, const std::vector<RegionCell>& cells,
                      std::uint64_t seed) {
  os << "# seed=" << seed << "\n";
  os << "k2,k3,D,label\n";
  for (const auto& cell : cells)
    os << format_double(cell.k2) << "," << format_double(cell.k3) << ","
       << format_double(cell.D) << "," << (cell.real ? "real" : "complex") << "\n";
}

}  // namespace lumpkit
