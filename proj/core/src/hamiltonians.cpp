#include "qae/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

#include "qae/errors.hpp"
#include "qae/fermion.hpp"
#include "qae/tolerances.hpp"

namespace qae {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError(file.string() + ": " + e.what());
  }
  return j;
}

// Hermiticity of the built operator: every coefficient must be real.
PauliSum require_real(PauliSum sum, const std::string& what) {
  PauliSum out(sum.n_qubits());
  for (const auto& [letters, c] : sum.terms()) {
    if (std::abs(c.imag()) > tol::kRealResidue)
      throw DataError(what + ": non-real coefficient on " + letters);
    out.add(letters, Complex(c.real(), 0.0));
  }
  return out;
}

}  // namespace

IntegralTable::IntegralTable(int n_spin_orbitals, double h_nuc,
                             Eigen::MatrixXd h_pq, std::vector<double> h_pqrs)
    : n_(n_spin_orbitals), h_nuc_(h_nuc), h_pq_(std::move(h_pq)),
      h_pqrs_(std::move(h_pqrs)) {
  if (n_ <= 0 || n_ > 16)
    throw std::invalid_argument("spin-orbital count out of range");
  if (h_pq_.rows() != n_ || h_pq_.cols() != n_)
    throw std::invalid_argument("h_pq has wrong dimensions");
  std::size_t n4 = static_cast<std::size_t>(n_) * n_ * n_ * n_;
  if (h_pqrs_.size() != n4)
    throw std::invalid_argument("h_pqrs has wrong size");
}

IntegralTable load_integral_table(const std::filesystem::path& file) {
  json j = read_json(file);
  try {
    int n = j.at("n_spin_orbitals").get<int>();
    if (n <= 0 || n > 16)
      throw DataError(file.string() + ": spin-orbital count out of range");
    double h_nuc = j.at("h_nuc").get<double>();
    if (j.at("two_body_convention").get<std::string>() != "pqsr")
      throw DataError(file.string() +
                      ": unsupported two-body convention (expected pqsr)");

    const json& jh1 = j.at("h_pq");
    if (!jh1.is_array() || static_cast<int>(jh1.size()) != n)
      throw DataError(file.string() + ": h_pq must be an n x n array");
    Eigen::MatrixXd h1(n, n);
    for (int p = 0; p < n; ++p) {
      if (static_cast<int>(jh1[p].size()) != n)
        throw DataError(file.string() + ": h_pq row has wrong length");
      for (int q = 0; q < n; ++q) h1(p, q) = jh1[p][q].get<double>();
    }

    const json& jh2 = j.at("h_pqrs");
    std::vector<double> h2(static_cast<std::size_t>(n) * n * n * n);
    if (static_cast<int>(jh2.size()) != n)
      throw DataError(file.string() + ": h_pqrs must be n^4");
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s)
            h2[static_cast<std::size_t>(((p * n + q) * n + r)) * n + s] =
                jh2.at(p).at(q).at(r).at(s).get<double>();

    IntegralTable table(n, h_nuc, std::move(h1), std::move(h2));

    if ((table.h_pq() - table.h_pq().transpose()).cwiseAbs().maxCoeff() >
        tol::kRealResidue)
      throw DataError(file.string() + ": h_pq is not symmetric");
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) {
            double v = table.h_pqrs(p, q, r, s);
            if (std::abs(v - table.h_pqrs(q, p, s, r)) > tol::kRealResidue ||
                std::abs(v - table.h_pqrs(s, q, r, p)) > tol::kRealResidue ||
                std::abs(v - table.h_pqrs(p, r, q, s)) > tol::kRealResidue)
              throw DataError(file.string() +
                              ": h_pqrs violates <pq|sr> symmetries");
          }

    if (j.contains("metadata")) {
      const json& meta = j["metadata"];
      if (meta.contains("system"))
        table.system = meta["system"].get<std::string>();
      if (meta.contains("reference_energy"))
        table.reference_energy = meta["reference_energy"].get<double>();
      if (meta.contains("geometry") && meta["geometry"].is_object() &&
          !meta["geometry"].empty())
        table.geometry = meta["geometry"].begin().value().get<double>();
    }
    return table;
  } catch (const json::exception& e) {
    throw DataError(file.string() + ": " + e.what());
  }
}

PauliSum build_molecular(const IntegralTable& table) {
  int n = table.n_spin_orbitals();
  PauliSum h(n);
  h.add(PauliString::identity(n), table.h_nuc());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double v = table.h_pq()(p, q);
      if (std::abs(v) < tol::kCoefficientPrune) continue;
      h += jw_monomial(FermionMonomial::one_body(p, q, v), n);
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          double v = table.h_pqrs(p, q, r, s);
          if (std::abs(v) < tol::kCoefficientPrune) continue;
          h += jw_monomial(FermionMonomial::two_body(p, q, r, s, 0.5 * v), n);
        }
  return require_real(simplify(h), "build_molecular");
}

CoefficientHamiltonian load_coefficients(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw DataError("cannot open " + file.string());

  CoefficientHamiltonian out{0, PauliSum(1), std::nullopt, std::nullopt};
  std::string line;
  int line_no = 0;
  std::string body;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "#") {
      std::string key;
      double value;
      if (ls >> key >> value) {
        if (key == "geometry") out.geometry = value;
        if (key == "reference_energy") out.reference_energy = value;
      }
      continue;
    }
    if (!have_header) {
      if (word != "qubits")
        throw DataError(file.string() + ": expected 'qubits <n>' header");
      if (!(ls >> out.n_qubits) || out.n_qubits <= 0 || out.n_qubits > 30)
        throw DataError(file.string() + ": invalid qubit count");
      have_header = true;
      continue;
    }
    body += line;
    body += '\n';
  }
  if (!have_header)
    throw DataError(file.string() + ": missing 'qubits <n>' header");
  try {
    out.terms = parse_pauli_sum(body);
  } catch (const DataError& e) {
    throw DataError(file.string() + ": " + e.what());
  }
  if (out.terms.n_qubits() != out.n_qubits)
    throw DataError(file.string() + ": terms do not match declared qubits");
  for (const auto& [letters, c] : out.terms.terms())
    if (c.imag() != 0.0)
      throw DataError(file.string() + ": complex coefficient on " + letters);
  return out;
}

PauliSum build_hubbard(const LatticeSpec& lattice) {
  if (lattice.rows <= 0 || lattice.cols <= 0)
    throw std::invalid_argument("lattice dimensions must be positive");
  int sites = lattice.rows * lattice.cols;
  int n = 2 * sites;
  if (n > 16) throw std::invalid_argument("lattice too large");

  auto site = [&](int r, int c) { return r * lattice.cols + c; };

  std::vector<std::pair<int, int>> bonds;
  for (int r = 0; r < lattice.rows; ++r)
    for (int c = 0; c < lattice.cols; ++c) {
      if (lattice.cols > 1) {
        int cr = (c + 1) % lattice.cols;
        std::pair<int, int> bond{std::min(site(r, c), site(r, cr)),
                                 std::max(site(r, c), site(r, cr))};
        if (std::find(bonds.begin(), bonds.end(), bond) == bonds.end())
          bonds.push_back(bond);
      }
      if (r + 1 < lattice.rows)
        bonds.emplace_back(site(r, c), site(r + 1, c));
    }

  PauliSum h(n);
  for (auto [i, j] : bonds)
    for (int spin = 0; spin < 2; ++spin) {
      int p = 2 * i + spin;
      int q = 2 * j + spin;
      h += jw_monomial(FermionMonomial::one_body(p, q, -lattice.t), n);
      h += jw_monomial(FermionMonomial::one_body(q, p, -lattice.t), n);
    }
  for (int i = 0; i < sites; ++i) {
    FermionMonomial nn({{2 * i, true}, {2 * i, false},
                        {2 * i + 1, true}, {2 * i + 1, false}},
                       lattice.u);
    h += jw_monomial(nn, n);
  }
  return require_real(simplify(h), "build_hubbard");
}

PauliSum number_operator(int n_modes) {
  if (n_modes <= 0)
    throw std::invalid_argument("mode count must be positive");
  PauliSum out(n_modes);
  out.add(PauliString::identity(n_modes), 0.5 * n_modes);
  for (int p = 0; p < n_modes; ++p) {
    std::string z(static_cast<std::size_t>(n_modes), 'I');
    z[p] = 'Z';
    out.add(z, -0.5);
  }
  return out;
}

GroundState ground_state(const PauliSum& h) {
  Matrix m = pauli_sum_to_matrix(h);
  if (!is_hermitian(m, tol::kObservable))
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  StateVector state(h.n_qubits(), solver.eigenvectors().col(0));
  return {solver.eigenvalues()(0), std::move(state)};
}

GroundState ground_state(const PauliSum& h, const PauliSum& number_op,
                         double n_particles) {
  if (number_op.n_qubits() != h.n_qubits())
    throw std::invalid_argument("number operator qubit count mismatch");
  Matrix m = pauli_sum_to_matrix(h);
  if (!is_hermitian(m, tol::kObservable))
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  Matrix nop = pauli_sum_to_matrix(number_op);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    Vector v = solver.eigenvectors().col(k);
    double nv = v.dot(nop * v).real();
    if (std::abs(nv - n_particles) < 1e-8)
      return {solver.eigenvalues()(k), StateVector(h.n_qubits(), v)};
  }
  throw std::invalid_argument(
      "no eigenstate found in the requested particle sector");
}

double compression_bound(int n_modes, int n_particles) {
  if (n_modes < 0 || n_modes > 30 || n_particles < 0 ||
      n_particles > n_modes)
    throw std::invalid_argument("invalid sector");
  // exact in double precision for n_modes <= 30
  double binom = 1.0;
  for (int i = 0; i < n_particles; ++i)
    binom = binom * (n_modes - i) / (i + 1);
  return std::log2(std::round(binom));
}

}  // namespace qae
