#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>

#include "qae/state.hpp"
#include "qae/tolerances.hpp"

namespace qae {

// Tensor product of single-qubit Paulis, stored as a letter string over
// {I, X, Y, Z}.  letters()[q] is the factor on qubit q, so the leftmost
// character acts on the least significant bit of the basis index.
class PauliString {
 public:
  explicit PauliString(std::string letters);

  static PauliString identity(int n_qubits);

  int n_qubits() const { return static_cast<int>(letters_.size()); }
  char letter(int qubit) const { return letters_[qubit]; }
  const std::string& letters() const { return letters_; }
  bool is_identity() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::string letters_;
};

// phase * string = product of the two inputs; phase is a power of i
std::pair<Complex, PauliString> multiply(const PauliString& a,
                                         const PauliString& b);

// Real-linear combination of Pauli strings with complex coefficients,
// keyed and iterated in lexicographic string order.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::map<std::string, Complex>& terms() const { return terms_; }

  Complex coefficient(const std::string& letters) const;
  void add(const PauliString& s, Complex coefficient);
  void add(const std::string& letters, Complex coefficient);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

 private:
  int n_qubits_;
  std::map<std::string, Complex> terms_;
};

Matrix pauli_to_matrix(const PauliString& s);
Matrix pauli_sum_to_matrix(const PauliSum& sum);

// Drops terms with |coefficient| < threshold.
PauliSum simplify(const PauliSum& sum,
                  double threshold = tol::kCoefficientPrune);

// Text format, one term per line: "<re> <im> <letters>".  Lines starting
// with '#' and blank lines are ignored.  Coefficients are written with
// enough digits to round-trip exactly.
std::string format_pauli_sum(const PauliSum& sum);
PauliSum parse_pauli_sum(std::istream& in);
PauliSum parse_pauli_sum(const std::string& text);

}  // namespace qae
