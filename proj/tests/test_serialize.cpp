#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qae/errors.hpp"
#include "qae/rng.hpp"
#include "qae/serialize.hpp"
#include "testutil.hpp"

using namespace qae;

TEST_CASE("state round-trip is exact") {
  std::mt19937_64 rng(137);
  StateVector psi = StateVector::random_state(3, rng);
  StateVector back = state_from_json(to_json(psi));
  CHECK(back.n_qubits() == 3);
  CHECK((back.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("density round-trip is exact") {
  std::mt19937_64 rng(139);
  StateVector psi = StateVector::random_state(2, rng);
  DensityMatrix rho = partial_trace(psi, QubitSubset{0});
  DensityMatrix back = density_from_json(to_json(rho));
  CHECK((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("ensemble round-trip preserves weights and reference") {
  std::mt19937_64 rng(149);
  std::vector<StateVector> states{StateVector::random_state(3, rng),
                                  StateVector::random_state(3, rng),
                                  StateVector::random_state(3, rng)};
  TrainingEnsemble ens = TrainingEnsemble(
      2, 1, StateVector::random_state(1, rng), states, {0.5, 0.25, 0.25});
  TrainingEnsemble back = ensemble_from_json(to_json(ens));
  CHECK(back.n_latent() == 2);
  CHECK(back.n_trash() == 1);
  CHECK(back.weights() == ens.weights());
  CHECK((back.reference().amplitudes() - ens.reference().amplitudes())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  for (std::size_t i = 0; i < states.size(); ++i)
    CHECK((back.states()[i].amplitudes() - states[i].amplitudes())
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("ensemble json ignores extra metadata keys") {
  std::mt19937_64 rng(151);
  TrainingEnsemble ens = TrainingEnsemble::uniform(
      1, 1, StateVector::zero_state(1),
      {StateVector::random_state(2, rng)});
  nlohmann::json j = to_json(ens);
  j["provenance"] = {{"note", "added by a tool"}};
  TrainingEnsemble back = ensemble_from_json(j);
  CHECK(back.n_qubits() == 2);
}

TEST_CASE("template descriptors rebuild equivalent templates") {
  SUBCASE("heuristic kinds") {
    for (int kind = 0; kind < 2; ++kind) {
      CircuitTemplate tpl =
          kind == 0 ? template_a(4, 2) : template_b(3, 1);
      CircuitTemplate back = template_from_descriptor(template_descriptor(tpl));
      CHECK(back.kind() == tpl.kind());
      CHECK(back.n_qubits() == tpl.n_qubits());
      CHECK(back.cells() == tpl.cells());
      CHECK(back.param_count() == tpl.param_count());
      std::mt19937_64 rng(157);
      Eigen::VectorXd p(tpl.param_count());
      for (int i = 0; i < p.size(); ++i) p(i) = uniform01(rng);
      CHECK((bind(tpl, p) - bind(back, p)).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("exponential generators round-trip") {
    Matrix g = testutil::pauli_matrix_oracle("XY");
    CircuitTemplate tpl = template_exponential(2, {g});
    CircuitTemplate back = template_from_descriptor(template_descriptor(tpl));
    REQUIRE(back.generators().size() == 1);
    CHECK((back.generators()[0] - g).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("opt result serialization controls the trace") {
  OptResult res;
  res.best_params = Eigen::VectorXd::LinSpaced(3, 0.0, 1.0);
  res.best_value = -7.25;
  res.evaluations = 42;
  res.converged = true;
  res.trace = {1.0, 0.5, 0.25};
  res.seed = 99;
  nlohmann::json with = to_json(res, true);
  nlohmann::json without = to_json(res, false);
  CHECK(with.contains("trace"));
  CHECK_FALSE(without.contains("trace"));
  CHECK(without.at("best_value").get<double>() == -7.25);
  CHECK(without.at("evaluations").get<std::int64_t>() == 42);
  CHECK(without.at("seed").get<std::uint64_t>() == 99);
  CHECK(with.at("trace").get<std::vector<double>>() == res.trace);
}

TEST_CASE("file io round-trips and reports failures as data errors") {
  auto tmp = std::filesystem::temp_directory_path() / "qae_serialize_test";
  std::filesystem::create_directories(tmp);
  nlohmann::json j{{"x", 1.5}, {"y", "z"}};
  write_json_file(tmp / "ok.json", j);
  CHECK(read_json_file(tmp / "ok.json") == j);
  CHECK_THROWS_AS(read_json_file(tmp / "missing.json"), DataError);
  {
    std::ofstream bad(tmp / "bad.json");
    bad << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file(tmp / "bad.json"), DataError);
  std::filesystem::remove_all(tmp);
}

TEST_CASE("malformed payloads become data errors") {
  CHECK_THROWS_AS(state_from_json(nlohmann::json{{"n_qubits", 2}}),
                  DataError);
  nlohmann::json not_normalized{
      {"n_qubits", 1},
      {"amplitudes", {{0.5, 0.0}, {0.0, 0.0}}}};
  CHECK_THROWS_AS(state_from_json(not_normalized), DataError);
  CHECK_THROWS_AS(template_from_descriptor(nlohmann::json{{"kind", "q"}}),
                  DataError);
}
