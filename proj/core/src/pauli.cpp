#include "qae/pauli.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "qae/errors.hpp"

namespace qae {

namespace {

int letter_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: return -1;
  }
}

// single-qubit products: PROD[a][b] = (power of i, letter of a*b)
struct Prod {
  int phase;
  char letter;
};
constexpr std::array<std::array<Prod, 4>, 4> kProd{{
    {{{0, 'I'}, {0, 'X'}, {0, 'Y'}, {0, 'Z'}}},
    {{{0, 'X'}, {0, 'I'}, {1, 'Z'}, {3, 'Y'}}},
    {{{0, 'Y'}, {3, 'Z'}, {0, 'I'}, {1, 'X'}}},
    {{{0, 'Z'}, {1, 'Y'}, {3, 'X'}, {0, 'I'}}},
}};

constexpr std::array<Complex, 4> kIPow{Complex{1, 0}, Complex{0, 1},
                                       Complex{-1, 0}, Complex{0, -1}};

std::string format_double(double v) {
  std::array<char, 32> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf.data(), end);
}

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  if (letters_.empty())
    throw std::invalid_argument("Pauli string must act on at least one qubit");
  for (char c : letters_)
    if (letter_index(c) < 0)
      throw std::invalid_argument(
          std::string("invalid Pauli letter '") + c + "'");
}

PauliString PauliString::identity(int n_qubits) {
  if (n_qubits <= 0)
    throw std::invalid_argument("Pauli string must act on at least one qubit");
  return PauliString(std::string(static_cast<std::size_t>(n_qubits), 'I'));
}

bool PauliString::is_identity() const {
  return letters_.find_first_not_of('I') == std::string::npos;
}

std::pair<Complex, PauliString> multiply(const PauliString& a,
                                         const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("Pauli string length mismatch");
  std::string out(a.letters());
  int phase = 0;
  for (int q = 0; q < a.n_qubits(); ++q) {
    const Prod& p = kProd[letter_index(a.letter(q))][letter_index(b.letter(q))];
    phase = (phase + p.phase) & 3;
    out[q] = p.letter;
  }
  return {kIPow[phase], PauliString(std::move(out))};
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0)
    throw std::invalid_argument("Pauli sum must act on at least one qubit");
}

Complex PauliSum::coefficient(const std::string& letters) const {
  auto it = terms_.find(letters);
  return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliString& s, Complex coefficient) {
  if (s.n_qubits() != n_qubits_)
    throw std::invalid_argument("Pauli string length mismatch");
  terms_[s.letters()] += coefficient;
}

void PauliSum::add(const std::string& letters, Complex coefficient) {
  add(PauliString(letters), coefficient);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_)
    throw std::invalid_argument("Pauli sum qubit count mismatch");
  for (const auto& [letters, c] : other.terms_) terms_[letters] += c;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& [letters, c] : terms_) c *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("Pauli sum qubit count mismatch");
  PauliSum out(a.n_qubits());
  for (const auto& [la, ca] : a.terms()) {
    PauliString sa(la);
    for (const auto& [lb, cb] : b.terms()) {
      auto [phase, sc] = multiply(sa, PauliString(lb));
      out.add(sc, ca * cb * phase);
    }
  }
  return out;
}

Matrix pauli_to_matrix(const PauliString& s) {
  // Each string is a signed permutation: column c maps to row c ^ xmask
  // with a phase determined by the Z and Y factors.
  std::uint64_t xmask = 0;
  std::uint64_t zmask = 0;
  int y_count = 0;
  for (int q = 0; q < s.n_qubits(); ++q) {
    switch (s.letter(q)) {
      case 'X': xmask |= 1ULL << q; break;
      case 'Z': zmask |= 1ULL << q; break;
      case 'Y':
        xmask |= 1ULL << q;
        zmask |= 1ULL << q;
        ++y_count;
        break;
      default: break;
    }
  }
  Eigen::Index dim = Eigen::Index{1} << s.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    // Y|0> = i|1>, Y|1> = -i|0>; Z contributes (-1)^bit
    int minus = std::popcount(static_cast<std::uint64_t>(c) & zmask) & 1;
    Complex amp = kIPow[(y_count + 2 * minus) & 3];
    m(static_cast<Eigen::Index>(c ^ static_cast<Eigen::Index>(xmask)), c) = amp;
  }
  return m;
}

Matrix pauli_sum_to_matrix(const PauliSum& sum) {
  Eigen::Index dim = Eigen::Index{1} << sum.n_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& [letters, c] : sum.terms())
    m += c * pauli_to_matrix(PauliString(letters));
  return m;
}

PauliSum simplify(const PauliSum& sum, double threshold) {
  PauliSum out(sum.n_qubits());
  for (const auto& [letters, c] : sum.terms())
    if (std::abs(c) >= threshold) out.add(letters, c);
  return out;
}

std::string format_pauli_sum(const PauliSum& sum) {
  std::string out;
  for (const auto& [letters, c] : sum.terms()) {
    out += format_double(c.real());
    out += ' ';
    out += format_double(c.imag());
    out += ' ';
    out += letters;
    out += '\n';
  }
  return out;
}

PauliSum parse_pauli_sum(std::istream& in) {
  std::map<std::string, Complex> terms;
  int n_qubits = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0;
    double im = 0.0;
    std::string letters;
    std::string extra;
    if (!(ls >> re >> im >> letters) || (ls >> extra))
      throw DataError("malformed Pauli term on line " +
                      std::to_string(line_no) + ": '" + line + "'");
    auto s = [&] {
      try {
        return PauliString(letters);
      } catch (const std::invalid_argument& e) {
        throw DataError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }();
    if (n_qubits < 0)
      n_qubits = s.n_qubits();
    else if (s.n_qubits() != n_qubits)
      throw DataError("inconsistent Pauli string length on line " +
                      std::to_string(line_no));
    terms[s.letters()] += Complex(re, im);
  }
  if (n_qubits < 0) throw DataError("Pauli sum text contains no terms");
  PauliSum out(n_qubits);
  for (const auto& [letters, c] : terms) out.add(letters, c);
  return out;
}

PauliSum parse_pauli_sum(const std::string& text) {
  std::istringstream in(text);
  return parse_pauli_sum(in);
}

}  // namespace qae
