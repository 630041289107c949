#include "qae_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <utility>

#include "qae/autoencoder.hpp"
#include "qae/errors.hpp"
#include "qae/optimize.hpp"
#include "qae/rng.hpp"
#include "qae/serialize.hpp"
#include "qae/tolerances.hpp"

namespace qae::cli {

namespace {

using nlohmann::json;

std::string now_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool geometry_close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

CircuitTemplate make_template(const ExperimentConfig& cfg) {
  if (cfg.template_kind == "a") return template_a(cfg.n_qubits, cfg.cells);
  return template_b(cfg.n_qubits, cfg.cells);
}

SystemEntry molecular_entry(const std::filesystem::path& file,
                            double geometry) {
  IntegralTable table = load_integral_table(file);
  PauliSum h = build_molecular(table);
  int n = table.n_spin_orbitals();
  // the systems here are neutral: one electron per spatial orbital pair
  GroundState gs = ground_state(h, number_operator(n), n / 2.0);
  if (table.reference_energy &&
      std::abs(gs.energy - *table.reference_energy) > 1e-6)
    throw DataError(file.string() +
                    ": ground energy disagrees with the recorded reference (" +
                    fmt(gs.energy) + " vs " + fmt(*table.reference_energy) +
                    ")");
  return {geometry, std::move(h), gs.energy, std::move(gs.state)};
}

std::vector<SystemEntry> molecular_entries(const ExperimentConfig& cfg,
                                           const std::vector<double>& grid) {
  json index = read_json_file(cfg.fixtures / "index.json");
  std::vector<SystemEntry> out;
  out.reserve(grid.size());
  const char* key = cfg.system == "h2" ? "r" : "d";
  for (double g : grid) {
    const json* hit = nullptr;
    for (const json& e : index.at("files"))
      if (geometry_close(e.at(key).get<double>(), g)) {
        hit = &e;
        break;
      }
    if (hit == nullptr)
      throw DataError("no fixture for geometry " + fmt(g) + " under " +
                      cfg.fixtures.string());
    out.push_back(molecular_entry(
        cfg.fixtures / hit->at("file").get<std::string>(), g));
  }
  return out;
}

std::vector<SystemEntry> hubbard_entries(const ExperimentConfig& cfg,
                                         const std::vector<double>& grid) {
  int rows = 2;
  int cols = cfg.system == "hubbard2x2" ? 2 : 1;
  int sites = rows * cols;
  std::vector<SystemEntry> out;
  out.reserve(grid.size());
  for (double t : grid) {
    PauliSum h = build_hubbard({rows, cols, t, cfg.hubbard_u});
    GroundState gs =
        ground_state(h, number_operator(2 * sites), static_cast<double>(sites));
    out.push_back({t, std::move(h), gs.energy, std::move(gs.state)});
  }
  return out;
}

std::vector<SystemEntry> coefficient_entries(
    const std::vector<std::filesystem::path>& files) {
  std::vector<SystemEntry> out;
  out.reserve(files.size());
  int index = 0;
  for (const auto& file : files) {
    CoefficientHamiltonian ch = load_coefficients(file);
    GroundState gs = ground_state(ch.terms);
    if (ch.reference_energy &&
        std::abs(gs.energy - *ch.reference_energy) > 1e-6)
      throw DataError(file.string() +
                      ": ground energy disagrees with the recorded reference");
    double geometry =
        ch.geometry ? *ch.geometry : static_cast<double>(index);
    out.push_back({geometry, std::move(ch.terms), gs.energy,
                   std::move(gs.state)});
    ++index;
  }
  return out;
}

json manifest_set(const std::vector<SystemEntry>& entries) {
  json arr = json::array();
  for (const SystemEntry& e : entries)
    arr.push_back({{"geometry", e.geometry}, {"energy", e.energy}});
  return arr;
}

TrainingEnsemble make_ensemble(const ExperimentConfig& cfg,
                               const std::vector<SystemEntry>& entries) {
  std::vector<StateVector> states;
  states.reserve(entries.size());
  for (const SystemEntry& e : entries) states.push_back(e.ground);
  return TrainingEnsemble::uniform(cfg.n_latent, cfg.n_trash(),
                                   StateVector::zero_state(cfg.n_trash()),
                                   std::move(states));
}

TrainingEnsemble read_ensemble(const std::filesystem::path& file) {
  return ensemble_from_json(read_json_file(file));
}

double neglog(double err) {
  return -std::log10(std::max(err, 0.0) + tol::kObjectiveEpsilon);
}

struct EvalRow {
  std::string set;
  int index;
  double geometry;
  double fidelity;
  double energy;
  double energy_exact;
};

json set_report(const std::vector<EvalRow>& rows) {
  double fid_err_sum = 0.0;
  double fid_sum = 0.0;
  double e_err_sum = 0.0;
  double nl_fid_min = std::numeric_limits<double>::infinity();
  double nl_fid_max = -nl_fid_min;
  double nl_e_min = nl_fid_min;
  double nl_e_max = -nl_fid_min;
  json per_state = json::array();
  for (const EvalRow& r : rows) {
    double fe = std::max(0.0, 1.0 - r.fidelity);
    double ee = std::abs(r.energy - r.energy_exact);
    fid_err_sum += fe;
    fid_sum += r.fidelity;
    e_err_sum += ee;
    nl_fid_min = std::min(nl_fid_min, neglog(fe));
    nl_fid_max = std::max(nl_fid_max, neglog(fe));
    nl_e_min = std::min(nl_e_min, neglog(ee));
    nl_e_max = std::max(nl_e_max, neglog(ee));
    per_state.push_back({{"index", r.index},
                         {"geometry", r.geometry},
                         {"fidelity", r.fidelity},
                         {"infidelity_neglog", neglog(fe)},
                         {"energy", r.energy},
                         {"energy_exact", r.energy_exact},
                         {"energy_abs_error", ee}});
  }
  double n = static_cast<double>(rows.size());
  return json{
      {"count", rows.size()},
      {"mean_fidelity", fid_sum / n},
      {"fidelity",
       {{"neglog_mae", neglog(fid_err_sum / n)},
        {"neglog_min", nl_fid_min},
        {"neglog_max", nl_fid_max}}},
      {"energy",
       {{"mae", e_err_sum / n},
        {"neglog_mae", neglog(e_err_sum / n)},
        {"neglog_min", nl_e_min},
        {"neglog_max", nl_e_max}}},
      {"per_state", std::move(per_state)}};
}

}  // namespace

ExperimentConfig apply_overrides(ExperimentConfig cfg,
                                 const CommandOverrides& overrides) {
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.restarts) cfg.restarts = *overrides.restarts;
  if (overrides.output) cfg.output = *overrides.output;
  return cfg;
}

SystemData build_system(const ExperimentConfig& cfg) {
  SystemData data;
  if (cfg.system == "h2" || cfg.system == "h4") {
    data.train = molecular_entries(cfg, cfg.train);
    data.test = molecular_entries(cfg, cfg.test);
  } else if (cfg.system == "hubbard2x1" || cfg.system == "hubbard2x2") {
    data.train = hubbard_entries(cfg, cfg.train);
    data.test = hubbard_entries(cfg, cfg.test);
  } else {
    data.train = coefficient_entries(cfg.train_files);
    data.test = coefficient_entries(cfg.test_files);
  }
  if (data.train.empty()) throw DataError("no training instances");
  return data;
}

void cmd_gen_data(const ExperimentConfig& cfg) {
  ExperimentConfig local = cfg;
  if (local.n_qubits == 0 && local.system == "coefficient-file") {
    // derive the register size before validating the split
    CoefficientHamiltonian probe = load_coefficients(local.train_files.at(0));
    local.n_qubits = probe.n_qubits;
  }
  if (local.n_latent < 1 || local.n_latent >= local.n_qubits)
    throw ConfigError("n_latent must be in [1, n_qubits)");

  SystemData data = build_system(local);
  std::filesystem::create_directories(local.output);

  json provenance{{"name", local.name},
                  {"system", local.system},
                  {"generated_utc", now_utc()}};

  json train_json = to_json(make_ensemble(local, data.train));
  train_json["provenance"] = provenance;
  train_json["provenance"]["set"] = "train";
  train_json["provenance"]["geometries"] = manifest_set(data.train);
  write_json_file(local.output / "train_ensemble.json", train_json);

  if (!data.test.empty()) {
    json test_json = to_json(make_ensemble(local, data.test));
    test_json["provenance"] = provenance;
    test_json["provenance"]["set"] = "test";
    test_json["provenance"]["geometries"] = manifest_set(data.test);
    write_json_file(local.output / "test_ensemble.json", test_json);
  }

  json manifest{{"name", local.name},
                {"system", local.system},
                {"n_qubits", local.n_qubits},
                {"n_latent", local.n_latent},
                {"n_trash", local.n_qubits - local.n_latent},
                {"hubbard_u", local.hubbard_u},
                {"train", manifest_set(data.train)},
                {"test", manifest_set(data.test)},
                {"generated_utc", now_utc()}};
  write_json_file(local.output / "manifest.json", manifest);

  std::cout << "wrote " << data.train.size() << " train and "
            << data.test.size() << " test instances under "
            << local.output.string() << "\n";
}

void cmd_train(const ExperimentConfig& cfg) {
  TrainingEnsemble ens = read_ensemble(cfg.output / "train_ensemble.json");
  ExperimentConfig local = cfg;
  local.n_qubits = ens.n_qubits();
  if (ens.n_latent() != local.n_latent)
    throw DataError("ensemble latent size does not match the config");
  CircuitTemplate tpl = make_template(local);

  TrainResult result =
      train(tpl, ens, local.optimizer, local.restarts, local.seed,
            local.threads);

  double c2 = cost_c2(result.best.best_params, tpl, ens);
  json model{{"meta",
              {{"created_utc", now_utc()},
               {"name", local.name},
               {"system", local.system}}},
             {"template", template_descriptor(tpl)},
             {"n_latent", ens.n_latent()},
             {"n_trash", ens.n_trash()},
             {"seed", local.seed},
             {"objective", "log10(1 - c2 + 1e-16)"},
             {"cost_c2", c2},
             {"best", to_json(result.best, false)}};
  json restarts = json::array();
  for (std::size_t r = 0; r < result.restarts.size(); ++r) {
    const OptResult& res = result.restarts[r];
    restarts.push_back({{"index", r},
                        {"best_value", res.best_value},
                        {"evaluations", res.evaluations},
                        {"converged", res.converged},
                        {"seed", res.seed}});
  }
  model["restarts"] = std::move(restarts);
  write_json_file(cfg.output / "model.json", model);

  // downsampled traces; full traces can run to millions of entries
  std::ofstream csv(cfg.output / "convergence.csv");
  if (!csv) throw DataError("cannot write convergence.csv");
  csv << "restart,evaluation,value\n";
  for (std::size_t r = 0; r < result.restarts.size(); ++r) {
    const auto& trace = result.restarts[r].trace;
    std::size_t stride = std::max<std::size_t>(1, trace.size() / 2000);
    for (std::size_t i = 0; i < trace.size(); i += stride)
      csv << r << ',' << i << ',' << fmt(trace[i]) << '\n';
    if (!trace.empty() && (trace.size() - 1) % stride != 0)
      csv << r << ',' << trace.size() - 1 << ',' << fmt(trace.back()) << '\n';
  }

  // diagnostics are on disk at this point; a non-finite optimum is a
  // numerical failure, not a config or data problem
  if (!std::isfinite(result.best.best_value))
    throw std::runtime_error("training produced a non-finite objective; see " +
                             (cfg.output / "model.json").string());

  std::cout << "best objective " << fmt(result.best.best_value) << " (c2 "
            << fmt(c2) << ") after "
            << result.best.evaluations << " evaluations; model at "
            << (cfg.output / "model.json").string() << "\n";
}

void cmd_evaluate(const ExperimentConfig& cfg) {
  json model = read_json_file(cfg.output / "model.json");
  CircuitTemplate tpl = template_from_descriptor(model.at("template"));
  Eigen::VectorXd params;
  {
    std::vector<double> p =
        model.at("best").at("best_params").get<std::vector<double>>();
    params = Eigen::Map<Eigen::VectorXd>(p.data(),
                                         static_cast<Eigen::Index>(p.size()));
  }
  int n_latent = model.at("n_latent").get<int>();
  if (cfg.n_qubits > 0 && tpl.n_qubits() != cfg.n_qubits)
    throw ConfigError("model register size does not match the " +
                      cfg.system + " system");
  ExperimentConfig local = cfg;
  local.n_qubits = tpl.n_qubits();
  local.n_latent = n_latent;

  SystemData data = build_system(local);
  StateVector reference = StateVector::zero_state(tpl.n_qubits() - n_latent);

  auto eval_set = [&](const std::string& set_name,
                      const std::filesystem::path& ensemble_file,
                      const std::vector<SystemEntry>& entries,
                      std::vector<EvalRow>& rows) {
    if (entries.empty()) return;
    TrainingEnsemble ens = read_ensemble(ensemble_file);
    if (ens.states().size() != entries.size())
      throw DataError(ensemble_file.string() +
                      ": ensemble does not match the configured grid");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      Matrix h = pauli_sum_to_matrix(entries[i].hamiltonian);
      RoundTripResult rt = roundtrip(params, tpl, ens.states()[i], n_latent,
                                     reference, &h);
      rows.push_back({set_name, static_cast<int>(i), entries[i].geometry,
                      rt.fidelity, rt.energy.value(), entries[i].energy});
    }
  };

  std::vector<EvalRow> train_rows;
  std::vector<EvalRow> test_rows;
  eval_set("train", cfg.output / "train_ensemble.json", data.train,
           train_rows);
  if (!data.test.empty())
    eval_set("test", cfg.output / "test_ensemble.json", data.test, test_rows);

  json report{{"name", local.name},
              {"system", local.system},
              {"n_latent", n_latent},
              {"created_utc", now_utc()},
              {"train", set_report(train_rows)}};
  if (!test_rows.empty()) report["test"] = set_report(test_rows);
  write_json_file(cfg.output / "evaluation.json", report);

  std::ofstream csv(cfg.output / "evaluation.csv");
  if (!csv) throw DataError("cannot write evaluation.csv");
  csv << "set,index,geometry,fidelity,infidelity_neglog,energy,energy_exact,"
         "energy_abs_error\n";
  auto write_rows = [&](const std::vector<EvalRow>& rows) {
    for (const EvalRow& r : rows)
      csv << r.set << ',' << r.index << ',' << fmt(r.geometry) << ','
          << fmt(r.fidelity) << ','
          << fmt(neglog(std::max(0.0, 1.0 - r.fidelity))) << ','
          << fmt(r.energy) << ',' << fmt(r.energy_exact) << ','
          << fmt(std::abs(r.energy - r.energy_exact)) << '\n';
  };
  write_rows(train_rows);
  write_rows(test_rows);

  auto summary = [&](const char* label, const json& s) {
    std::cout << label << ": -log10 infidelity mae "
              << fmt(s.at("fidelity").at("neglog_mae").get<double>())
              << " (min " << fmt(s.at("fidelity").at("neglog_min").get<double>())
              << ", max " << fmt(s.at("fidelity").at("neglog_max").get<double>())
              << "), energy mae "
              << fmt(s.at("energy").at("mae").get<double>()) << "\n";
  };
  summary("train", report["train"]);
  if (report.contains("test")) summary("test", report["test"]);
}

namespace {

struct LoadedModel {
  CircuitTemplate tpl;
  Eigen::VectorXd params;
  int n_latent;
};

LoadedModel load_model(const std::filesystem::path& output) {
  json model = read_json_file(output / "model.json");
  std::vector<double> p =
      model.at("best").at("best_params").get<std::vector<double>>();
  return {template_from_descriptor(model.at("template")),
          Eigen::Map<Eigen::VectorXd>(p.data(),
                                      static_cast<Eigen::Index>(p.size())),
          model.at("n_latent").get<int>()};
}

// present ensemble sets in a fixed order: train first, then test if written
std::vector<std::pair<std::string, std::filesystem::path>> ensemble_files(
    const std::filesystem::path& output) {
  std::vector<std::pair<std::string, std::filesystem::path>> out;
  for (const char* set_name : {"train", "test"}) {
    std::filesystem::path file =
        output / (std::string(set_name) + "_ensemble.json");
    if (std::filesystem::exists(file)) out.emplace_back(set_name, file);
  }
  return out;
}

// rows and columns labeled from 1 for plotting
void append_density_csv(std::ofstream& csv, const std::string& set,
                        std::size_t index, const char* kind,
                        const Matrix& rho) {
  for (Eigen::Index r = 0; r < rho.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.cols(); ++c)
      csv << set << ',' << index << ',' << kind << ',' << r + 1 << ','
          << c + 1 << ',' << fmt(rho(r, c).real()) << ','
          << fmt(rho(r, c).imag()) << '\n';
}

}  // namespace

void cmd_export_latent(const ExperimentConfig& cfg,
                       const std::vector<int>& states) {
  LoadedModel model = load_model(cfg.output);
  int n_latent = model.n_latent;
  StateVector reference =
      StateVector::zero_state(model.tpl.n_qubits() - n_latent);

  std::ofstream csv(cfg.output / "latent.csv");
  if (!csv) throw DataError("cannot write latent.csv");
  csv << "set,index,kind,row,col,re,im\n";

  json sets = json::object();
  for (const auto& [set_name, file] : ensemble_files(cfg.output)) {
    TrainingEnsemble ens = read_ensemble(file);
    std::vector<std::size_t> selected;
    if (states.empty()) {
      selected.resize(ens.states().size());
      std::iota(selected.begin(), selected.end(), 0);
    } else {
      for (int s : states) {
        if (s < 0 || static_cast<std::size_t>(s) >= ens.states().size())
          throw std::invalid_argument(
              "state selector " + std::to_string(s) + " out of range for " +
              set_name + " ensemble of " +
              std::to_string(ens.states().size()));
        selected.push_back(static_cast<std::size_t>(s));
      }
    }
    json arr = json::array();
    for (std::size_t i : selected) {
      const StateVector& psi = ens.states()[i];
      DensityMatrix input = DensityMatrix::from_pure(psi);
      StateVector phi = apply_circuit(model.tpl, model.params, psi);
      DensityMatrix latent =
          partial_trace(phi, QubitSubset::range(0, n_latent));
      DensityMatrix trash = partial_trace(
          phi, QubitSubset::range(n_latent, model.tpl.n_qubits() - n_latent));
      arr.push_back({{"index", i},
                     {"purity", latent.purity()},
                     {"trash_fidelity", fidelity_pure(reference, trash)},
                     {"input_rho", to_json(input)},
                     {"latent_rho", to_json(latent)}});
      append_density_csv(csv, set_name, i, "input", input.matrix());
      append_density_csv(csv, set_name, i, "latent", latent.matrix());
    }
    sets[set_name] = std::move(arr);
  }
  json out{{"name", cfg.name},
           {"n_latent", n_latent},
           {"created_utc", now_utc()},
           {"sets", std::move(sets)}};
  write_json_file(cfg.output / "latent.json", out);
  std::cout << "wrote " << (cfg.output / "latent.json").string() << " and "
            << (cfg.output / "latent.csv").string() << "\n";
}

void cmd_swap_demo(const ExperimentConfig& cfg, std::uint64_t shots,
                   bool exact) {
  if (!exact && shots == 0)
    throw std::invalid_argument("shots must be at least 1");
  LoadedModel model = load_model(cfg.output);

  std::ofstream csv(cfg.output / "swap_demo.csv");
  if (!csv) throw DataError("cannot write swap_demo.csv");
  csv << "set,index,exact,sampled,std_error\n";

  json rows = json::array();
  for (const auto& [set_name, file] : ensemble_files(cfg.output)) {
    TrainingEnsemble ens = read_ensemble(file);
    StateVector reference = ens.reference();
    for (std::size_t i = 0; i < ens.states().size(); ++i) {
      DensityMatrix trash = trash_state(model.params, model.tpl,
                                        ens.states()[i], model.n_latent);
      double f = fidelity_pure(reference, trash);
      SwapTestResult r =
          exact ? swap_test(f, 0, 0)
                : swap_test(f, shots,
                            mix_seed(cfg.seed, mix_seed(
                                rows.size(), shots)));
      // binomial error on p0 propagated through F = 2 p0 - 1
      double p0 = 0.5 * (1.0 + f);
      double sigma =
          exact ? 0.0
                : 2.0 * std::sqrt(p0 * (1.0 - p0) /
                                  static_cast<double>(shots));
      rows.push_back({{"set", set_name},
                      {"index", i},
                      {"exact", f},
                      {"sampled", r.estimate},
                      {"std_error", sigma}});
      csv << set_name << ',' << i << ',' << fmt(f) << ',' << fmt(r.estimate)
          << ',' << fmt(sigma) << '\n';
    }
  }
  json out{{"name", cfg.name},
           {"seed", cfg.seed},
           {"shots", exact ? 0 : shots},
           {"exact_mode", exact},
           {"states", std::move(rows)},
           {"created_utc", now_utc()}};
  write_json_file(cfg.output / "swap_demo.json", out);
  std::cout << "wrote " << (cfg.output / "swap_demo.json").string() << " and "
            << (cfg.output / "swap_demo.csv").string() << "\n";
}

}  // namespace qae::cli
