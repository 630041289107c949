#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = QAE_CLI_PATH;
const fs::path kDataDir = QAE_DATA_DIR;

int run(const std::string& args) {
  std::string cmd = "\"" + kCli + "\" " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name) {
    dir = fs::temp_directory_path() / ("qae_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  fs::path write_config(const std::string& name, const std::string& body) {
    fs::path file = dir / name;
    std::ofstream out(file);
    out << body;
    return file;
  }
};

// small hubbard experiment that trains in a couple of seconds
std::string hubbard_config(const std::string& out_dir,
                           const std::string& extra_opt = "") {
  return "[experiment]\n"
         "name = \"cli_test\"\n"
         "system = \"hubbard2x1\"\n"
         "template = \"b\"\n"
         "n_latent = 3\n"
         "seed = 5\n"
         "[data]\n"
         "train = [0.9, 1.1]\n"
         "u = 2.0\n"
         "[optimizer]\n"
         "restarts = 2\n"
         "max_iterations = 60\n"
         "hops = 0\n" +
         extra_opt +
         "[output]\n"
         "dir = \"" + out_dir + "\"\n";
}

json read(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("full pipeline on a small hubbard experiment") {
  Workspace ws("pipeline");
  fs::path cfg = ws.write_config("exp.toml", hubbard_config("out"));
  std::string c = "--config \"" + cfg.string() + "\"";

  REQUIRE(run("gen-data " + c) == 0);
  json manifest = read(ws.dir / "out" / "manifest.json");
  CHECK(manifest.at("n_qubits") == 4);
  CHECK(manifest.at("n_trash") == 1);
  CHECK(manifest.at("train").size() == 2);

  REQUIRE(run("train " + c) == 0);
  json model = read(ws.dir / "out" / "model.json");
  CHECK(model.at("template").at("kind") == "b");
  CHECK(model.at("restarts").size() == 2);
  CHECK(model.at("best").at("best_value").get<double>() < -3.0);
  CHECK(fs::exists(ws.dir / "out" / "convergence.csv"));

  REQUIRE(run("evaluate " + c) == 0);
  json eval = read(ws.dir / "out" / "evaluation.json");
  double mae_neglog =
      eval.at("train").at("fidelity").at("neglog_mae").get<double>();
  CHECK(mae_neglog > 3.0);
  auto per_state = eval.at("train").at("per_state");
  CHECK(per_state.size() == 2);
  double lo = eval.at("train").at("fidelity").at("neglog_min").get<double>();
  double hi = eval.at("train").at("fidelity").at("neglog_max").get<double>();
  for (const auto& row : per_state) {
    double v = row.at("infidelity_neglog").get<double>();
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
  }

  REQUIRE(run("export-latent " + c) == 0);
  json latent = read(ws.dir / "out" / "latent.json");
  for (const auto& row : latent.at("sets").at("train")) {
    const auto& re = row.at("latent_rho").at("re");
    // trace of the exported latent density must be 1
    double trace = 0.0;
    for (std::size_t k = 0; k < re.size(); ++k)
      trace += re[k][k].get<double>();
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(row.at("trash_fidelity").get<double>() > 0.99);
  }
  std::string latent_csv = slurp(ws.dir / "out" / "latent.csv");
  CHECK(latent_csv.find("set,index,kind,row,col,re,im") == 0);
  CHECK(latent_csv.find("train,0,input,1,1,") != std::string::npos);

  REQUIRE(run("swap-demo " + c + " --shots 2000") == 0);
  json swap = read(ws.dir / "out" / "swap_demo.json");
  CHECK(swap.at("states").size() == 2);
  for (const auto& row : swap.at("states")) {
    CHECK(row.at("exact").get<double>() > 0.9);
    CHECK(row.at("std_error").get<double>() < 0.05);
  }

  REQUIRE(run("swap-demo " + c + " --exact") == 0);
  json exact = read(ws.dir / "out" / "swap_demo.json");
  for (const auto& row : exact.at("states"))
    CHECK(row.at("sampled") == row.at("exact"));
}

TEST_CASE("reruns with the same seed are byte-identical") {
  Workspace ws("determinism");
  fs::path cfg_a = ws.write_config("a.toml", hubbard_config("out_a"));
  fs::path cfg_b = ws.write_config("b.toml", hubbard_config("out_b"));

  REQUIRE(run("gen-data --config \"" + cfg_a.string() + "\"") == 0);
  REQUIRE(run("train --config \"" + cfg_a.string() + "\"") == 0);
  REQUIRE(run("gen-data --config \"" + cfg_b.string() + "\"") == 0);
  REQUIRE(run("train --config \"" + cfg_b.string() + "\"") == 0);

  json ma = read(ws.dir / "out_a" / "model.json");
  json mb = read(ws.dir / "out_b" / "model.json");
  ma.erase("meta");
  mb.erase("meta");
  CHECK(ma == mb);
  CHECK(slurp(ws.dir / "out_a" / "convergence.csv") ==
        slurp(ws.dir / "out_b" / "convergence.csv"));
  CHECK(slurp(ws.dir / "out_a" / "train_ensemble.json") ==
        slurp(ws.dir / "out_b" / "train_ensemble.json"));
}

TEST_CASE("seed override changes the result") {
  Workspace ws("seed_override");
  fs::path cfg = ws.write_config("exp.toml", hubbard_config("out"));
  std::string c = "--config \"" + cfg.string() + "\"";
  REQUIRE(run("gen-data " + c) == 0);
  REQUIRE(run("train " + c) == 0);
  json base = read(ws.dir / "out" / "model.json");
  REQUIRE(run("train " + c + " --seed 6") == 0);
  json other = read(ws.dir / "out" / "model.json");
  CHECK(base.at("seed").get<std::uint64_t>() == 5);
  CHECK(other.at("seed").get<std::uint64_t>() == 6);
  CHECK(base.at("best").at("best_params") !=
        other.at("best").at("best_params"));
}

TEST_CASE("molecular gen-data cross-checks fixture energies") {
  Workspace ws("h2");
  std::string body =
      "[experiment]\n"
      "name = \"h2_test\"\n"
      "system = \"h2\"\n"
      "n_latent = 2\n"
      "[data]\n"
      "fixtures = \"" + (kDataDir / "h2").string() + "\"\n"
      "train = [0.5, 1.3]\n"
      "[output]\n"
      "dir = \"out\"\n";
  fs::path cfg = ws.write_config("exp.toml", body);
  REQUIRE(run("gen-data --config \"" + cfg.string() + "\"") == 0);

  json manifest = read(ws.dir / "out" / "manifest.json");
  CHECK(manifest.at("n_qubits") == 4);
  json ens = read(ws.dir / "out" / "train_ensemble.json");
  // h2 ground states have support on exactly two basis states
  for (const auto& st : ens.at("states")) {
    int support = 0;
    for (std::size_t i = 0; i < st.at("re").size(); ++i) {
      double re = st.at("re")[i].get<double>();
      double im = st.at("im")[i].get<double>();
      if (re * re + im * im > 1e-20) ++support;
    }
    CHECK(support == 2);
  }

  // geometry missing from the fixture index is a data error
  std::string bad = body;
  bad.replace(bad.find("train = [0.5, 1.3]"), 18, "train = [0.5, 1.31]");
  fs::path cfg_bad = ws.write_config("bad.toml", bad);
  CHECK(run("gen-data --config \"" + cfg_bad.string() + "\"") == 3);
}

TEST_CASE("error exit codes") {
  Workspace ws("errors");
  CHECK(run("train --config \"" + (ws.dir / "missing.toml").string() +
            "\"") == 2);

  fs::path bad_system = ws.write_config(
      "bad_system.toml",
      "[experiment]\nname = \"x\"\nsystem = \"h3\"\nn_latent = 1\n"
      "[data]\ntrain = [1.0]\n[output]\ndir = \"out\"\n");
  CHECK(run("gen-data --config \"" + bad_system.string() + "\"") == 2);

  fs::path bad_key = ws.write_config(
      "bad_key.toml", hubbard_config("out", "typo_key = 3\n"));
  CHECK(run("train --config \"" + bad_key.string() + "\"") == 2);

  // evaluate before gen-data/train: model.json is missing
  fs::path cfg = ws.write_config("ok.toml", hubbard_config("out"));
  CHECK(run("evaluate --config \"" + cfg.string() + "\"") == 3);

  REQUIRE(run("gen-data --config \"" + cfg.string() + "\"") == 0);
  REQUIRE(run("train --config \"" + cfg.string() + "\"") == 0);
  CHECK(run("export-latent --config \"" + cfg.string() + "\" --states 99") ==
        2);
  CHECK(run("swap-demo --config \"" + cfg.string() + "\" --shots 0") == 2);
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
}
