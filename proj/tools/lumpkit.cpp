#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lumpkit/dynamics.hpp"
#include "lumpkit/families.hpp"
#include "lumpkit/fixtures.hpp"
#include "lumpkit/io.hpp"
#include "lumpkit/lumping.hpp"
#include "lumpkit/realizer.hpp"

namespace fs = std::filesystem;
using namespace lumpkit;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
  if (!path || *path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + *path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Vector parse_vector(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  Vector v(static_cast<Index>(values.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = values[static_cast<size_t>(i)];
  return v;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw DomainError(ErrorCode::InvalidArgument, "range must look like lo:hi");
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

Vector json_vector(const json& params, const std::string& key) {
  if (!params.contains(key))
    throw DomainError(ErrorCode::InvalidArgument, "params need \"" + key + "\"");
  const json& arr = params.at(key);
  Vector v(static_cast<Index>(arr.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = arr[static_cast<size_t>(i)].get<double>();
  return v;
}

FamilyResult generate_family(const std::string& family, const json& params,
                             const Tolerances& tol) {
  if (family == "catenary") {
    Vector k = json_vector(params, "k");
    Vector mu = params.contains("mu") ? json_vector(params, "mu")
                                      : Vector(Vector::Zero(k.size() + 1));
    return catenary_irreversible(k, mu, tol);
  }
  if (family == "mamillary-in") return mamillary_inward(json_vector(params, "k"), tol);
  if (family == "mamillary-out") return mamillary_outward(json_vector(params, "k"));
  if (family == "mamillary-mixed")
    return mamillary_mixed_example(json_vector(params, "k"), tol);
  if (family == "circulant") {
    const double d = params.value("d", 0.0);
    return circulant_simplicial(json_vector(params, "c"), d, tol);
  }
  if (family == "cycle") {
    const bool reversible = params.value("reversible", false);
    Vector k = json_vector(params, "k");
    CompartmentalModel model = cycle(k, reversible);
    EigenSystem es;
    try {
      es = cycle_eigensystem(k, reversible, tol);
    } catch (const DomainError&) {
      es = eig_transpose(model.A);
    }
    return {std::move(model), std::move(es)};
  }
  throw DomainError(ErrorCode::InvalidArgument, "unknown family: " + family);
}

json lump_from_files(const std::string& model_path, const std::string& q_path,
                     const std::optional<std::string>& p_path, const Tolerances& tol) {
  CompartmentalModel model = model_from_json(read_json_file(model_path));
  const json qj = read_json_file(q_path);
  json pj;
  bool complex_path = json_matrix_is_complex(qj);
  if (p_path) {
    pj = read_json_file(*p_path);
    complex_path = complex_path || json_matrix_is_complex(pj);
  }
  if (complex_path) {
    LumpingMatrixC Q{cmatrix_from_json(qj), {}, std::nullopt};
    if (p_path) Q = transform_basis<Complex>(Q, cmatrix_from_json(pj), tol);
    return to_json(lump<Complex>(model, Q.Q, tol), Q.Q);
  }
  LumpingMatrix Q{matrix_from_json(qj), {}, std::nullopt};
  if (p_path) Q = transform_basis<Real>(Q, matrix_from_json(pj), tol);
  return to_json(lump<Real>(model, Q.Q, tol), Q.Q);
}

void write_fixture_catalog(const std::string& dir, const Tolerances& tol,
                           std::uint64_t seed) {
  fs::create_directories(dir);
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text(dir + "/" + name, text);
  };

  {
    CompartmentalModel model = fixtures::reversible_chain5();
    emit("reversible_chain5.model.json", dump(to_json(model)));
    EigenSystem es = eig_transpose(model.A);
    emit("reversible_chain5.eigensystem.json", dump(to_json(es)));
    Matrix V = fixtures::reversible_chain5_eigvec_rows();
    Matrix Q(2, 5);
    Q.row(0) = V.row(0);
    Q.row(1) = V.row(2);
    Tolerances printed = tol;
    printed.rank_rel = 1e-5;  // rows are six-decimal tabulations
    emit("reversible_chain5.lumped.json",
         dump(to_json(lump<Real>(model, Q, printed), Q)));
    Trajectory traj = simulate(model, Vector::Unit(5, 0), uniform_times(0.0, 10.0, 1001));
    std::ostringstream csv;
    write_csv_trajectory(csv, traj, seed);
    emit("reversible_chain5.trajectory.csv", csv.str());
  }
  {
    CompartmentalModel model = fixtures::reversible_mamillary(1.0, 2.0);
    Matrix Q = fixtures::reversible_mamillary_Q(1.0, 2.0);
    emit("reversible_mamillary.model.json", dump(to_json(model)));
    emit("reversible_mamillary.lumped.json", dump(to_json(lump<Real>(model, Q, tol), Q)));
  }
  {
    CompartmentalModel model = fixtures::nonuniform_chain(1.0, 2.0, 3.0, 4.0);
    Matrix Q = fixtures::nonuniform_chain_Q_permutation();
    emit("nonuniform_chain.model.json", dump(to_json(model)));
    emit("nonuniform_chain.lumped.json", dump(to_json(lump<Real>(model, Q, tol), Q)));
  }
  {
    Vector k(4);
    k << 1.0, 2.0, 3.0, 4.0;
    Vector mu(5);
    mu << 0.1, 0.2, 0.3, 0.4, 0.5;
    FamilyResult fam = catenary_irreversible(k, mu, tol);
    emit("catenary_flowed.model.json", dump(to_json(fam.model)));
    emit("catenary_flowed.eigensystem.json", dump(to_json(fam.eigensystem)));
    LumpingMatrixC Q = build_Q(fam.eigensystem, {1, 3}, tol);
    Matrix Qr = realify(Q).Q;
    emit("catenary_flowed.lumped.json", dump(to_json(lump<Real>(fam.model, Qr, tol), Qr)));
  }
  {
    Vector k(3);
    k << 1.0, 2.0, 3.0;
    FamilyResult fam = mamillary_inward(k, tol);
    emit("mamillary_inward.model.json", dump(to_json(fam.model)));
    emit("mamillary_inward.eigensystem.json", dump(to_json(fam.eigensystem)));
    LumpingMatrixC Q = build_Q(fam.eigensystem, {2, 0, 3}, tol);
    Matrix Qr = realify(Q).Q;
    emit("mamillary_inward.lumped.json", dump(to_json(lump<Real>(fam.model, Qr, tol), Qr)));
  }
  {
    Vector k(4);
    k << 1.0, 2.0, 3.0, 4.0;
    FamilyResult fam = mamillary_outward(k);
    emit("mamillary_outward.model.json", dump(to_json(fam.model)));
    emit("mamillary_outward.eigensystem.json", dump(to_json(fam.eigensystem)));
    Matrix Q = Matrix::Zero(1, 5);
    Q(0, 4) = 1.0;
    emit("mamillary_outward.lumped.json", dump(to_json(lump<Real>(fam.model, Q, tol), Q)));
  }
  {
    Vector k(5);
    k << 1.0, 2.0, 3.0, 4.0, 5.0;
    FamilyResult fam = mamillary_mixed_example(k, tol);
    emit("mamillary_mixed.model.json", dump(to_json(fam.model)));
    emit("mamillary_mixed.eigensystem.json", dump(to_json(fam.eigensystem)));
    LumpingMatrixC Q = build_Q(fam.eigensystem, {3, 5, 0}, tol);
    Matrix Qr = realify(Q).Q;
    emit("mamillary_mixed.lumped.json", dump(to_json(lump<Real>(fam.model, Qr, tol), Qr)));
  }
  {
    Vector k(3);
    k << 1.0, 2.0, 3.0;
    CompartmentalModel model = cycle(k, false);
    EigenSystem es = cycle_eigensystem(k, false, tol);
    emit("cycle3.model.json", dump(to_json(model)));
    emit("cycle3.eigensystem.json", dump(to_json(es)));
    LumpingMatrixC Q = build_Q(es, {0, 1}, tol);
    emit("cycle3.lumped.json", dump(to_json(lump<Complex>(model, Q.Q, tol), Q.Q)));
  }
  {
    Vector k = Vector::Ones(5);
    CompartmentalModel model = cycle(k, true);
    EigenSystem es = cycle_eigensystem(k, true, tol);
    emit("cycle5_uniform.model.json", dump(to_json(model)));
    emit("cycle5_uniform.eigensystem.json", dump(to_json(es)));
    LumpingMatrixC Q = build_Q(es, {4, 3, 2}, tol);
    Matrix Qr = realify(Q).Q;
    emit("cycle5_uniform.lumped.json", dump(to_json(lump<Real>(model, Qr, tol), Qr)));
  }
  emit("realize_nonneg_infeasible.json",
       dump(to_json(exists_nonneg_P(fixtures::sign_rule_infeasible_Q(), tol), seed)));
  emit("realize_nonneg_feasible.json",
       dump(to_json(exists_nonneg_P(fixtures::sign_rule_feasible_Q(), tol), seed)));
  emit("realize_real.json",
       dump(to_json(exists_real_P(fixtures::complex_realizable_Q(), seed, tol), seed)));
  {
    std::ostringstream csv;
    write_csv_region(csv, region_scan(1.0, {0.0, 20.0}, {0.0, 20.0}, 201), seed);
    emit("region_scan.csv", csv.str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compartmental-model lumping toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --tol / --seed may follow the subcommand

  Tolerances tol;
  if (const char* env = std::getenv("LUMPKIT_TOL")) tol.residual = std::atof(env);
  std::uint64_t seed = 0;
  app.add_option("--tol", tol.residual, "residual tolerance override");
  app.add_option("--seed", seed, "seed for randomized procedures");

  auto* gen = app.add_subcommand("generate", "construct a model family and its eigen-system");
  std::string family, params_inline, params_file;
  std::string gen_out = "-", gen_eigen_out;
  gen->add_option("--family", family,
                  "catenary|mamillary-in|mamillary-out|mamillary-mixed|circulant|cycle")
      ->required();
  gen->add_option("--params", params_inline, "inline JSON parameters");
  gen->add_option("--params-file", params_file, "JSON parameter file");
  gen->add_option("--out", gen_out, "model JSON path (default stdout)");
  gen->add_option("--eigen-out", gen_eigen_out, "eigen-system JSON path");

  auto* lmp = app.add_subcommand("lump", "lump a model with a given Q (and optional P)");
  std::string lump_model, lump_q, lump_p, lump_out = "-";
  lmp->add_option("--model", lump_model, "model JSON")->required();
  lmp->add_option("--Q", lump_q, "lumping matrix JSON")->required();
  lmp->add_option("--P", lump_p, "basis transform JSON");
  lmp->add_option("--out", lump_out, "output path (default stdout)");

  auto* chk = app.add_subcommand("check", "kinetic/compartmental structure report");
  std::string check_model;
  chk->add_option("--model", check_model, "model JSON")->required();

  auto* rnn = app.add_subcommand("realize-nonneg", "decide existence of P with PQ >= 0");
  std::string rnn_q, rnn_out = "-";
  rnn->add_option("--Q", rnn_q, "matrix JSON")->required();
  rnn->add_option("--out", rnn_out, "output path (default stdout)");

  auto* rrl = app.add_subcommand("realize-real", "decide existence of P with PQ real");
  std::string rrl_q, rrl_out = "-";
  rrl->add_option("--Q", rrl_q, "matrix JSON")->required();
  rrl->add_option("--out", rrl_out, "output path (default stdout)");

  auto* sim = app.add_subcommand("simulate", "integrate c' = Ac + b and emit CSV");
  std::string sim_model, sim_x0, sim_out = "-";
  double t0 = 0.0, t1 = 10.0;
  int steps = 1001;
  sim->add_option("--model", sim_model, "model JSON")->required();
  sim->add_option("--x0", sim_x0, "comma-separated initial state")->required();
  sim->add_option("--t0", t0, "start time");
  sim->add_option("--t1", t1, "end time");
  sim->add_option("--steps", steps, "number of grid points");
  sim->add_option("--out", sim_out, "output path (default stdout)");

  auto* scan = app.add_subcommand("region-scan", "label the 3-cycle discriminant grid");
  double k1 = 1.0;
  std::string range = "0:20";
  int scan_steps = 201;
  std::string scan_out = "-";
  scan->add_option("--k1", k1, "fixed first rate");
  scan->add_option("--range", range, "lo:hi for both k2 and k3");
  scan->add_option("--steps", scan_steps, "grid points per axis");
  scan->add_option("--out", scan_out, "output path (default stdout)");

  auto* fix = app.add_subcommand("fixtures", "regenerate the fixture output catalog");
  std::string fix_dir = "fixtures";
  fix->add_option("--out-dir", fix_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (gen->parsed()) {
      json params = json::object();
      if (!params_file.empty())
        params = read_json_file(params_file);
      else if (!params_inline.empty())
        params = json::parse(params_inline);
      FamilyResult fam = generate_family(family, params, tol);
      if (!gen_eigen_out.empty()) {
        write_text(gen_out, dump(to_json(fam.model)));
        write_text(gen_eigen_out, dump(to_json(fam.eigensystem)));
      } else if (gen_out != "-") {
        write_text(gen_out, dump(to_json(fam.model)));
        write_text(gen_out + ".eigensystem.json", dump(to_json(fam.eigensystem)));
      } else {
        json both;
        both["model"] = to_json(fam.model);
        both["eigensystem"] = to_json(fam.eigensystem);
        write_text(std::nullopt, dump(both));
      }
    } else if (lmp->parsed()) {
      std::optional<std::string> p_path;
      if (!lump_p.empty()) p_path = lump_p;
      write_text(lump_out, dump(lump_from_files(lump_model, lump_q, p_path, tol)));
    } else if (chk->parsed()) {
      CompartmentalModel model = model_from_json(read_json_file(check_model));
      write_text(std::nullopt, dump(to_json(validate_kinetic(model))));
    } else if (rnn->parsed()) {
      Matrix Q = matrix_from_json(read_json_file(rnn_q));
      write_text(rnn_out, dump(to_json(exists_nonneg_P(Q, tol), seed)));
    } else if (rrl->parsed()) {
      CMatrix Q = cmatrix_from_json(read_json_file(rrl_q));
      write_text(rrl_out, dump(to_json(exists_real_P(Q, seed, tol), seed)));
    } else if (sim->parsed()) {
      CompartmentalModel model = model_from_json(read_json_file(sim_model));
      Trajectory traj = simulate(model, parse_vector(sim_x0), uniform_times(t0, t1, steps));
      std::ostringstream csv;
      write_csv_trajectory(csv, traj, seed);
      write_text(sim_out, csv.str());
    } else if (scan->parsed()) {
      const auto r = parse_range(range);
      std::ostringstream csv;
      write_csv_region(csv, region_scan(k1, r, r, scan_steps), seed);
      write_text(scan_out, csv.str());
    } else if (fix->parsed()) {
      write_fixture_catalog(fix_dir, tol, seed);
    }
  } catch (const DomainError& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "io"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
