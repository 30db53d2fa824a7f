#pragma once

// Vertex shifts of finite type: a 0/1 transition matrix on a finite alphabet,
// admissibility of finite words, and exact path counting.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace smale {

using Symbol = int;

/// A finite window x_start .. x_{start+size-1} of a point of the shift space.
struct Word {
  int start = 0;
  std::vector<Symbol> symbols;

  int end() const { return start + static_cast<int>(symbols.size()); }
  bool empty() const { return symbols.empty(); }
  bool operator==(const Word&) const = default;
};

/// Shift of finite type given by a square 0/1 transition matrix.
///
/// The constructor validates the matrix and throws MalformedMatrix or
/// ZeroRowOrColumn. Every constructed Sft is therefore valid.
class Sft {
 public:
  using Matrix = std::vector<std::vector<int>>;

  explicit Sft(Matrix trans, std::vector<std::string> labels = {});

  int size() const { return n_; }
  bool allowed(Symbol from, Symbol to) const { return trans_[from * n_ + to] != 0; }
  const Matrix& matrix() const { return matrix_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Symbol s) const { return labels_[s]; }

  /// Symbol id for a label; throws InadmissibleWord for unknown labels.
  Symbol symbol(const std::string& label) const;

  std::span<const Symbol> successors(Symbol s) const { return successors_[s]; }
  std::span<const Symbol> predecessors(Symbol s) const { return predecessors_[s]; }

  bool operator==(const Sft& other) const {
    return matrix_ == other.matrix_ && labels_ == other.labels_;
  }

 private:
  int n_ = 0;
  Matrix matrix_;
  std::vector<std::uint8_t> trans_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Symbol>> successors_;
  std::vector<std::vector<Symbol>> predecessors_;
};

/// Throws if the matrix is not a valid vertex-shift matrix.
void validate(const Sft::Matrix& trans);

/// Mixing test: the matrix is primitive (Wielandt power is entrywise positive).
bool is_mixing(const Sft& sft);

bool is_admissible(const Sft& sft, std::span<const Symbol> symbols);
inline bool is_admissible(const Sft& sft, const Word& w) { return is_admissible(sft, w.symbols); }

/// Square matrix of arbitrary-precision integers.
class CountMatrix {
 public:
  explicit CountMatrix(int n = 0) : n_(n), data_(static_cast<std::size_t>(n) * n) {}
  static CountMatrix identity(int n);
  static CountMatrix from(const Sft& sft);

  int size() const { return n_; }
  mpz_class& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  const mpz_class& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  CountMatrix operator*(const CountMatrix& rhs) const;
  bool operator==(const CountMatrix&) const = default;

 private:
  int n_;
  std::vector<mpz_class> data_;
};

/// trans^length by repeated squaring.
CountMatrix transition_power(const Sft& sft, long length);

/// Number of admissible words of `length` transitions from i to j, i.e. (trans^length)[i][j].
mpz_class count_paths(const Sft& sft, Symbol from, Symbol to, long length);

}  // namespace smale
