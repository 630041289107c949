// Acceptance battery: drives the shipped presets end to end through the CLI
// and checks the release gates. Prints one PASS/FAIL line per criterion.
//
// Two kinds of checks appear below. Hard gates assert a capability (training
// reaches a threshold, a closed form holds, reruns are deterministic); any
// hard-gate miss fails the process. Stall expectations assert an optimization
// *negative*: that a given preset does not cross a threshold under the default
// budget. A stall expectation that is exceeded is reported as XPASS (the
// optimizer did better than the recorded ceiling) and does not fail the
// process; see README "Expected stalls" for the rationale.

#include <qae/autoencoder.hpp>
#include <qae/circuits.hpp>
#include <qae/fermion.hpp>
#include <qae/hamiltonians.hpp>
#include <qae/optimize.hpp>
#include <qae/pauli.hpp>
#include <qae/rng.hpp>
#include <qae/state.hpp>
#include <qae/tolerances.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string cli = QAE_CLI_PATH;
const fs::path data_dir = QAE_DATA_DIR;

int failures = 0;
int xpasses = 0;

void line(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
  std::fflush(stdout);
}

void line_xpass(int criterion, const std::string& detail) {
  std::printf("criterion %d: XPASS %s\n", criterion, detail.c_str());
  ++xpasses;
  std::fflush(stdout);
}

int run(const std::string& args) {
  std::string cmd = cli + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("missing " + p.string());
  return json::parse(in);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TrainRun {
  double best_neglog = 0.0;       // -best objective from model.json
  double train_fid_neglog = 0.0;  // evaluation.json train fidelity neglog mae
  double test_fid_neglog = 0.0;
  double test_energy_mae = 0.0;
  double train_seconds = 0.0;
  bool ok = false;
};

// Runs gen-data + train + evaluate for one preset into out_dir.
TrainRun run_preset(const std::string& preset, const fs::path& out_dir,
                    const std::string& extra = "") {
  TrainRun r;
  fs::create_directories(out_dir);
  std::string cfg = (data_dir / "presets" / (preset + ".toml")).string();
  std::string common = "-c " + cfg + " --out " + out_dir.string() + " " + extra;
  if (run("gen-data " + common) != 0) return r;
  auto t0 = std::chrono::steady_clock::now();
  if (run("train " + common) != 0) return r;
  auto t1 = std::chrono::steady_clock::now();
  r.train_seconds = std::chrono::duration<double>(t1 - t0).count();
  if (run("evaluate " + common) != 0) return r;
  json model = read_json(out_dir / "model.json");
  r.best_neglog = -model.at("best").at("best_value").get<double>();
  json ev = read_json(out_dir / "evaluation.json");
  r.train_fid_neglog =
      ev.at("train").at("fidelity").at("neglog_mae").get<double>();
  if (ev.contains("test")) {
    r.test_fid_neglog =
        ev.at("test").at("fidelity").at("neglog_mae").get<double>();
    r.test_energy_mae = ev.at("test").at("energy").at("mae").get<double>();
  }
  r.ok = true;
  return r;
}

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

Eigen::VectorXd random_params(const qae::CircuitTemplate& tpl,
                              std::mt19937_64& rng) {
  Eigen::VectorXd p(tpl.param_count());
  for (int i = 0; i < p.size(); ++i)
    p[i] = qae::uniform(rng, qae::kParamLo, qae::kParamHi);
  return p;
}

// ---- criterion 5 helpers -------------------------------------------------

qae::TrainingEnsemble random_ensemble(int n_latent, int n_trash,
                                      std::mt19937_64& rng) {
  int n = n_latent + n_trash;
  std::vector<qae::StateVector> states;
  std::vector<double> weights;
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    states.push_back(qae::StateVector::random_state(n, rng));
    double w = 0.25 + 0.5 * qae::uniform01(rng);
    weights.push_back(w);
    sum += w;
  }
  for (auto& w : weights) w /= sum;
  weights.back() = 1.0 - weights[0] - weights[1];
  return qae::TrainingEnsemble(n_latent, n_trash,
                               qae::StateVector::random_state(n_trash, rng),
                               states, weights);
}

bool check_c1_le_c2() {
  std::mt19937_64 rng(777);
  int draws = 0;
  while (draws < 200) {
    int total = 2 + draws % 3;  // n + k cycles through {2, 3, 4}
    int n_latent = 1 + (draws / 3) % (total - 1);
    auto ens = random_ensemble(n_latent, total - n_latent, rng);
    auto tpl = (draws % 2 == 0) ? qae::template_a(total, 1)
                                : qae::template_b(total, 1);
    Eigen::VectorXd p = random_params(tpl, rng);
    double c1 = qae::cost_c1(p, tpl, ens);
    double c2 = qae::cost_c2(p, tpl, ens);
    if (c1 > c2 + 1e-10) return false;
    ++draws;
  }
  return true;
}

// Build an ensemble that a known unitary decouples exactly, then verify the
// lossless-compression condition: c1 = c2 = 1 and roundtrip fidelity 1.
bool check_decoupling() {
  std::mt19937_64 rng(4242);
  auto tpl = qae::template_a(4, 1);
  Eigen::VectorXd p = random_params(tpl, rng);
  auto reference = qae::StateVector::zero_state(2);
  std::vector<qae::StateVector> states;
  std::vector<double> weights{0.5, 0.25, 0.25};
  for (int i = 0; i < 3; ++i) {
    auto latent = qae::StateVector::random_state(2, rng);
    auto product = qae::tensor(latent, reference);
    states.push_back(qae::apply_circuit_adjoint(tpl, p, product));
  }
  qae::TrainingEnsemble ens(2, 2, reference, states, weights);
  double c1 = qae::cost_c1(p, tpl, ens);
  double c2 = qae::cost_c2(p, tpl, ens);
  if (std::abs(c1 - 1.0) > 1e-10 || std::abs(c2 - 1.0) > 1e-10) return false;
  for (const auto& psi : states) {
    auto rt = qae::roundtrip(p, tpl, psi, ens.n_latent(), ens.reference());
    if (std::abs(rt.fidelity - 1.0) > 1e-10) return false;
  }
  return true;
}

bool check_unitarity_and_counts() {
  std::mt19937_64 rng(31337);
  int checked = 0;
  for (int n : {2, 4, 6}) {
    int reps = (n == 6) ? 50 : 100;
    for (int kind = 0; kind < 2; ++kind) {
      auto tpl = (kind == 0) ? qae::template_a(n, 1) : qae::template_b(n, 1);
      for (int r = 0; r < reps; ++r) {
        Eigen::VectorXd p = random_params(tpl, rng);
        qae::Matrix u = qae::bind(tpl, p);
        qae::Matrix delta = u.adjoint() * u;
        delta -= qae::Matrix::Identity(u.rows(), u.cols());
        if (delta.cwiseAbs().maxCoeff() > 1e-10) return false;
        ++checked;
      }
    }
  }
  if (checked != 500) return false;
  // Second half of the 1000 draws: re-bind with fresh parameters.
  for (int n : {2, 4, 6}) {
    int reps = (n == 6) ? 50 : 100;
    for (int kind = 0; kind < 2; ++kind) {
      auto tpl = (kind == 0) ? qae::template_a(n, 1) : qae::template_b(n, 1);
      for (int r = 0; r < reps; ++r) {
        Eigen::VectorXd p = random_params(tpl, rng);
        if (!qae::is_unitary(qae::bind(tpl, p), 1e-10)) return false;
        ++checked;
      }
    }
  }
  if (checked != 1000) return false;
  for (int n = 2; n <= 8; ++n) {
    if (qae::template_a(n, 1).param_count() != 15 * n * (n - 1) / 2)
      return false;
    if (qae::template_b(n, 1).param_count() != 3 * n * (n - 1) + 6 * n)
      return false;
  }
  return true;
}

bool check_car_relations() {
  const int modes = 4;
  const Eigen::Index dim = 16;
  for (int p = 0; p < modes; ++p) {
    for (int q = 0; q < modes; ++q) {
      qae::Matrix ap = qae::pauli_sum_to_matrix(qae::jw_annihilation(p, modes));
      qae::Matrix aq = qae::pauli_sum_to_matrix(qae::jw_annihilation(q, modes));
      qae::Matrix cq = qae::pauli_sum_to_matrix(qae::jw_creation(q, modes));
      qae::Matrix anti1 = ap * cq + cq * ap;
      qae::Matrix anti2 = ap * aq + aq * ap;
      qae::Matrix expect1 = qae::Matrix::Zero(dim, dim);
      if (p == q) expect1 = qae::Matrix::Identity(dim, dim);
      if ((anti1 - expect1).cwiseAbs().maxCoeff() > 1e-12) return false;
      if (anti2.cwiseAbs().maxCoeff() > 1e-12) return false;
    }
  }
  return true;
}

bool check_hubbard_analytic() {
  qae::LatticeSpec lattice{2, 1, 1.0, 2.0};
  auto h = qae::build_hubbard(lattice);
  auto gs = qae::ground_state(h, qae::number_operator(4), 2.0);
  double exact = (lattice.u - std::sqrt(lattice.u * lattice.u + 16.0)) / 2.0;
  return std::abs(gs.energy - exact) < 1e-9;
}

bool check_h2_support() {
  json index = read_json(data_dir / "h2" / "index.json");
  for (const auto& entry : index.at("files")) {
    auto table = qae::load_integral_table(
        data_dir / "h2" / entry.at("file").get<std::string>());
    int n = table.n_spin_orbitals();
    auto h = qae::build_molecular(table);
    auto gs = qae::ground_state(h, qae::number_operator(n), n / 2.0);
    int support = 0;
    for (Eigen::Index i = 0; i < gs.state.dim(); ++i)
      if (std::abs(gs.state.amplitude(i)) > 1e-10) ++support;
    if (support != 2) return false;
  }
  return true;
}

bool check_fd_gradient() {
  Eigen::VectorXd center(3);
  center << 0.3, -0.7, 1.1;
  auto f = [&](const Eigen::VectorXd& x) { return (x - center).squaredNorm(); };
  Eigen::VectorXd x(3);
  x << 1.0, 2.0, 3.0;
  Eigen::VectorXd g = qae::fd_gradient(f, x, 1e-6, -10.0, 10.0);
  Eigen::VectorXd exact = 2.0 * (x - center);
  return (g - exact).cwiseAbs().maxCoeff() < 1e-6;
}

bool check_swap_sampling() {
  std::mt19937_64 rng(9090);
  const std::uint64_t shots = 100000;
  int inside = 0, total = 60;
  for (int i = 0; i < total; ++i) {
    double f = qae::uniform01(rng);
    auto res = qae::swap_test(f, shots, rng());
    double p0 = (1.0 + f) / 2.0;
    double sigma_f = 2.0 * std::sqrt(p0 * (1.0 - p0) / double(shots));
    if (std::abs(res.estimate - f) <= 3.0 * sigma_f + 1e-12) ++inside;
  }
  // 3 sigma => ~99.7% inside; demand >= 95% to keep the check sharp but stable.
  return inside >= 57;
}

bool check_monotone_trace() {
  std::mt19937_64 rng(2026);
  auto ens = random_ensemble(1, 1, rng);
  auto tpl = qae::template_b(2, 1);
  qae::OptimizerConfig cfg;
  cfg.max_iterations = 40;
  cfg.hops = 1;
  auto res = qae::train(tpl, ens, cfg, 2, 99, 1);
  const auto& trace = res.best.trace;
  if (trace.size() < 2) return false;
  // The raw trace holds every evaluation (descent steps, line-search and
  // finite-difference probes). The reported best must be witnessed by the
  // trace, must not regress past the starting point, and must reproduce
  // when the best parameters are re-evaluated.
  double tmin = *std::min_element(trace.begin(), trace.end());
  if (tmin > res.best.best_value + 1e-12) return false;
  if (res.best.best_value > trace[0] + 1e-12) return false;
  double objective_at_best = qae::objective(res.best.best_params, tpl, ens);
  return std::abs(objective_at_best - res.best.best_value) < 1e-12;
}

// Strips volatile timestamp fields so reruns can be compared byte for byte.
std::string canonical_json(const fs::path& p) {
  json j = read_json(p);
  j.erase("meta");
  if (j.contains("provenance")) j.at("provenance").erase("generated_utc");
  return j.dump();
}

// An exception inside one criterion must not take down the others.
template <typename Fn>
void criterion(int idx, Fn&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    line(idx, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  fs::path work = fs::current_path() / "acceptance_work";
  fs::remove_all(work);
  fs::create_directories(work);

  // --- criterion 1: h2 compression quality under template A --------------
  TrainRun h2_42, h2_41;
  criterion(1, [&] {
    h2_42 = run_preset("h2_a_4to2", work / "h2_a_4to2");
    h2_41 = run_preset("h2_a_4to1", work / "h2_a_4to1");
    auto gate = [](const TrainRun& r) {
      return r.ok && r.best_neglog >= qae::accept::kH2FidelityNeglog &&
             r.test_fid_neglog >= qae::accept::kH2FidelityNeglog &&
             r.train_seconds <= 600.0;
    };
    line(1, gate(h2_42) && gate(h2_41),
         "h2 4->2 train " + fmt2(h2_42.best_neglog) + " test " +
             fmt2(h2_42.test_fid_neglog) + " (" + fmt2(h2_42.train_seconds) +
             "s); 4->1 train " + fmt2(h2_41.best_neglog) + " test " +
             fmt2(h2_41.test_fid_neglog) + " (" + fmt2(h2_41.train_seconds) +
             "s); gates >= 5, <= 600s");
  });

  // --- criterion 2: decoded-state energies at chemical accuracy ----------
  criterion(2, [&] {
    bool ok = h2_42.ok && h2_41.ok &&
              h2_42.test_energy_mae < qae::accept::kH2EnergyMae &&
              h2_41.test_energy_mae < qae::accept::kH2EnergyMae;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "test-set energy MAE %.3g / %.3g Hartree (gate < 1.6e-3)",
                  h2_42.test_energy_mae, h2_41.test_energy_mae);
    line(2, ok, buf);
  });

  // --- criterion 3: hubbard 2x1 ansatz differential ----------------------
  criterion(3, [&] {
    TrainRun a43 = run_preset("hubbard2x1_a_4to3", work / "hub_a_4to3");
    TrainRun a42 = run_preset("hubbard2x1_a_4to2", work / "hub_a_4to2");
    TrainRun b42 = run_preset("hubbard2x1_b_4to2", work / "hub_b_4to2");
    bool hard = a43.ok && b42.ok && a42.ok &&
                a43.best_neglog >= qae::accept::kHubbardA43Neglog &&
                b42.best_neglog >= qae::accept::kHubbardB42Neglog;
    bool stall = a42.best_neglog < qae::accept::kHubbardA42Ceiling;
    std::string detail = "A 4->3 " + fmt2(a43.best_neglog) +
                         " (gate >= 5); B 4->2 " + fmt2(b42.best_neglog) +
                         " (gate >= 3); A 4->2 " + fmt2(a42.best_neglog) +
                         " (expected stall < 2)";
    if (hard && stall) {
      line(3, true, detail);
    } else if (hard) {
      line_xpass(3, detail + " -- stall expectation exceeded, not gating");
    } else {
      line(3, false, detail);
    }
  });

  // --- criterion 4: compression bound + 8->6 stall expectations ----------
  criterion(4, [&] {
    double bound = qae::compression_bound(8, 4);
    bool hard = std::abs(bound - std::log2(70.0)) < 1e-12;
    std::vector<std::pair<std::string, double>> stalls;
    bool all_ran = true;
    for (const char* name :
         {"h4_a_8to6", "h4_b_8to6", "hubbard2x2_a_8to6", "hubbard2x2_b_8to6"}) {
      TrainRun r = run_preset(name, work / name);
      all_ran = all_ran && r.ok;
      stalls.emplace_back(name, r.best_neglog);
    }
    std::string detail = "compression_bound(8,4) = log2(70); stalls < 3:";
    bool stall_ok = true;
    for (auto& [name, v] : stalls) {
      detail += " " + name + " " + fmt2(v);
      if (v >= qae::accept::kEightQubitCeiling) stall_ok = false;
    }
    if (!hard || !all_ran) {
      line(4, false, detail);
    } else if (stall_ok) {
      line(4, true, detail);
    } else {
      line_xpass(4, detail + " -- stall expectation exceeded, not gating");
    }
  });

  // --- criterion 5: property battery --------------------------------------
  criterion(5, [&] {
    struct Prop {
      const char* name;
      bool ok;
    };
    std::vector<Prop> props = {
        {"c1<=c2 on 200 draws", check_c1_le_c2()},
        {"decoupling instance exact", check_decoupling()},
        {"1000 bound circuits unitary + param counts",
         check_unitarity_and_counts()},
        {"jw car relations 4 modes", check_car_relations()},
        {"hubbard 2x1 analytic energy", check_hubbard_analytic()},
        {"h2 fixtures 2-state support", check_h2_support()},
        {"fd gradient quadratic", check_fd_gradient()},
        {"swap-test 3-sigma sampling", check_swap_sampling()},
        {"best-so-far trace monotone", check_monotone_trace()},
    };
    bool ok = true;
    std::string detail;
    for (const auto& p : props) {
      ok = ok && p.ok;
      if (!p.ok) detail += std::string(" [") + p.name + "]";
    }
    line(5, ok, ok ? "all 9 property checks hold" : "failing:" + detail);
  });

  // --- criterion 6: determinism -------------------------------------------
  criterion(6, [&] {
    fs::path d1 = work / "det_1", d2 = work / "det_2";
    TrainRun r1 = run_preset("hubbard2x1_b_4to2", d1, "--restarts 2");
    TrainRun r2 = run_preset("hubbard2x1_b_4to2", d2, "--restarts 2");
    bool ok = r1.ok && r2.ok;
    ok = ok &&
         canonical_json(d1 / "model.json") == canonical_json(d2 / "model.json");
    ok = ok && canonical_json(d1 / "train_ensemble.json") ==
                   canonical_json(d2 / "train_ensemble.json");
    ok = ok &&
         read_file(d1 / "convergence.csv") == read_file(d2 / "convergence.csv");
    line(6, ok, "preset rerun reproduces model, ensemble and trace bytes");
  });

  if (failures == 0 && xpasses == 0)
    std::printf("ACCEPTANCE: PASS\n");
  else if (failures == 0)
    std::printf("ACCEPTANCE: PASS (%d stall expectation(s) exceeded)\n",
                xpasses);
  else
    std::printf("ACCEPTANCE: FAIL (%d hard gate(s))\n", failures);
  return failures == 0 ? 0 : 1;
}
