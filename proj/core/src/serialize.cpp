#include "qae/serialize.hpp"

#include <fstream>

#include "qae/errors.hpp"

namespace qae {

namespace {

using nlohmann::json;

json complex_arrays(const Vector& v) {
  std::vector<double> re(static_cast<std::size_t>(v.size()));
  std::vector<double> im(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re[static_cast<std::size_t>(i)] = v(i).real();
    im[static_cast<std::size_t>(i)] = v(i).imag();
  }
  return json{{"re", re}, {"im", im}};
}

Vector vector_from(const json& j, Eigen::Index expected) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != expected ||
      static_cast<Eigen::Index>(im.size()) != expected)
    throw DataError("amplitude arrays have wrong length");
  Vector v(expected);
  for (Eigen::Index i = 0; i < expected; ++i)
    v(i) = Complex(re.at(static_cast<std::size_t>(i)).get<double>(),
                   im.at(static_cast<std::size_t>(i)).get<double>());
  return v;
}

json matrix_arrays(const Matrix& m) {
  // row-major nested arrays
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rr = json::array();
    json ri = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from(const json& j, Eigen::Index expected) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != expected ||
      static_cast<Eigen::Index>(im.size()) != expected)
    throw DataError("matrix arrays have wrong shape");
  Matrix m(expected, expected);
  for (Eigen::Index r = 0; r < expected; ++r) {
    const auto& rr = re.at(static_cast<std::size_t>(r));
    const auto& ri = im.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(rr.size()) != expected ||
        static_cast<Eigen::Index>(ri.size()) != expected)
      throw DataError("matrix arrays have wrong shape");
    for (Eigen::Index c = 0; c < expected; ++c)
      m(r, c) = Complex(rr.at(static_cast<std::size_t>(c)).get<double>(),
                        ri.at(static_cast<std::size_t>(c)).get<double>());
  }
  return m;
}

}  // namespace

json to_json(const StateVector& psi) {
  json j = complex_arrays(psi.amplitudes());
  j["n_qubits"] = psi.n_qubits();
  return j;
}

StateVector state_from_json(const json& j) {
  try {
    int n = j.at("n_qubits").get<int>();
    if (n < 0 || n > 30) throw DataError("qubit count out of range");
    Vector v = vector_from(j, Eigen::Index{1} << n);
    return StateVector(n, std::move(v));
  } catch (const json::exception& e) {
    throw DataError(std::string("state: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("state: ") + e.what());
  }
}

json to_json(const DensityMatrix& rho) {
  json j = matrix_arrays(rho.matrix());
  j["n_qubits"] = rho.n_qubits();
  return j;
}

DensityMatrix density_from_json(const json& j) {
  try {
    int n = j.at("n_qubits").get<int>();
    if (n < 0 || n > 15) throw DataError("qubit count out of range");
    Matrix m = matrix_from(j, Eigen::Index{1} << n);
    return DensityMatrix(n, std::move(m));
  } catch (const json::exception& e) {
    throw DataError(std::string("density: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("density: ") + e.what());
  }
}

json to_json(const TrainingEnsemble& ens) {
  json states = json::array();
  for (const StateVector& s : ens.states()) states.push_back(to_json(s));
  return json{{"n_latent", ens.n_latent()},
              {"n_trash", ens.n_trash()},
              {"reference", to_json(ens.reference())},
              {"weights", ens.weights()},
              {"states", std::move(states)}};
}

TrainingEnsemble ensemble_from_json(const json& j) {
  try {
    int n_latent = j.at("n_latent").get<int>();
    int n_trash = j.at("n_trash").get<int>();
    StateVector reference = state_from_json(j.at("reference"));
    std::vector<double> weights =
        j.at("weights").get<std::vector<double>>();
    std::vector<StateVector> states;
    states.reserve(j.at("states").size());
    for (const json& js : j.at("states")) states.push_back(state_from_json(js));
    return TrainingEnsemble(n_latent, n_trash, std::move(reference),
                            std::move(states), std::move(weights));
  } catch (const json::exception& e) {
    throw DataError(std::string("ensemble: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("ensemble: ") + e.what());
  }
}

json template_descriptor(const CircuitTemplate& tpl) {
  json j{{"n_qubits", tpl.n_qubits()}, {"cells", tpl.cells()}};
  switch (tpl.kind()) {
    case TemplateKind::kA: j["kind"] = "a"; break;
    case TemplateKind::kB: j["kind"] = "b"; break;
    case TemplateKind::kExponential: {
      j["kind"] = "exponential";
      json gens = json::array();
      for (const Matrix& g : tpl.generators()) gens.push_back(matrix_arrays(g));
      j["generators"] = std::move(gens);
      break;
    }
  }
  return j;
}

CircuitTemplate template_from_descriptor(const json& j) {
  try {
    std::string kind = j.at("kind").get<std::string>();
    int n_qubits = j.at("n_qubits").get<int>();
    if (kind == "a") return template_a(n_qubits, j.at("cells").get<int>());
    if (kind == "b") return template_b(n_qubits, j.at("cells").get<int>());
    if (kind == "exponential") {
      std::vector<Matrix> gens;
      for (const json& jg : j.at("generators"))
        gens.push_back(matrix_from(jg, Eigen::Index{1} << n_qubits));
      return template_exponential(n_qubits, std::move(gens));
    }
    throw DataError("unknown template kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DataError(std::string("template: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("template: ") + e.what());
  }
}

json to_json(const OptResult& result, bool include_trace) {
  json j{{"best_value", result.best_value},
         {"evaluations", result.evaluations},
         {"converged", result.converged},
         {"seed", result.seed}};
  std::vector<double> params(
      result.best_params.data(),
      result.best_params.data() + result.best_params.size());
  j["best_params"] = std::move(params);
  if (include_trace) j["trace"] = result.trace;
  return j;
}

json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& file, const json& j) {
  std::ofstream out(file);
  if (!out) throw DataError("cannot open " + file.string() + " for writing");
  out << j.dump(1) << '\n';
  if (!out) throw DataError("failed writing " + file.string());
}

}  // namespace qae
