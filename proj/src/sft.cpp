#include "smale/sft.hpp"

#include <algorithm>

#include "smale/errors.hpp"

namespace smale {

void validate(const Sft::Matrix& trans) {
  const auto n = trans.size();
  if (n == 0) throw MalformedMatrix("transition matrix is empty");
  for (const auto& row : trans) {
    if (row.size() != n) throw MalformedMatrix("transition matrix is not square");
    for (int entry : row) {
      if (entry != 0 && entry != 1) {
        throw MalformedMatrix("transition matrix entries must be 0 or 1 (edge shifts are not supported)");
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    bool has_successor = std::any_of(trans[s].begin(), trans[s].end(), [](int e) { return e == 1; });
    bool has_predecessor =
        std::any_of(trans.begin(), trans.end(), [s](const auto& row) { return row[s] == 1; });
    if (!has_successor || !has_predecessor) throw ZeroRowOrColumn(static_cast<int>(s));
  }
}

Sft::Sft(Matrix trans, std::vector<std::string> labels) : matrix_(std::move(trans)) {
  validate(matrix_);
  n_ = static_cast<int>(matrix_.size());
  if (labels.empty()) {
    for (int s = 0; s < n_; ++s) labels.push_back(std::to_string(s));
  }
  if (static_cast<int>(labels.size()) != n_) {
    throw MalformedMatrix("number of symbol labels does not match matrix size");
  }
  for (int s = 0; s < n_; ++s) {
    for (int t = s + 1; t < n_; ++t) {
      if (labels[s] == labels[t]) throw MalformedMatrix("duplicate symbol label '" + labels[s] + "'");
    }
  }
  labels_ = std::move(labels);
  trans_.resize(static_cast<std::size_t>(n_) * n_);
  successors_.resize(n_);
  predecessors_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      trans_[i * n_ + j] = static_cast<std::uint8_t>(matrix_[i][j]);
      if (matrix_[i][j]) {
        successors_[i].push_back(j);
        predecessors_[j].push_back(i);
      }
    }
  }
}

Symbol Sft::symbol(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InadmissibleWord("unknown symbol label '" + label + "'");
  return static_cast<Symbol>(it - labels_.begin());
}

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const auto n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

}  // namespace

bool is_mixing(const Sft& sft) {
  // A nonnegative matrix is primitive iff its power (n-1)^2 + 1 is positive.
  const int n = sft.size();
  long exponent = static_cast<long>(n - 1) * (n - 1) + 1;
  BoolMatrix base(n, std::vector<bool>(n));
  BoolMatrix result(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    result[i][i] = true;
    for (int j = 0; j < n; ++j) base[i][j] = sft.allowed(i, j);
  }
  while (exponent > 0) {
    if (exponent & 1) result = bool_product(result, base);
    exponent >>= 1;
    if (exponent > 0) base = bool_product(base, base);
  }
  for (const auto& row : result)
    for (bool entry : row)
      if (!entry) return false;
  return true;
}

bool is_admissible(const Sft& sft, std::span<const Symbol> symbols) {
  for (Symbol s : symbols)
    if (s < 0 || s >= sft.size()) return false;
  for (std::size_t i = 1; i < symbols.size(); ++i)
    if (!sft.allowed(symbols[i - 1], symbols[i])) return false;
  return true;
}

CountMatrix CountMatrix::identity(int n) {
  CountMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

CountMatrix CountMatrix::from(const Sft& sft) {
  CountMatrix m(sft.size());
  for (int i = 0; i < sft.size(); ++i)
    for (int j = 0; j < sft.size(); ++j) m.at(i, j) = sft.allowed(i, j) ? 1 : 0;
  return m;
}

CountMatrix CountMatrix::operator*(const CountMatrix& rhs) const {
  CountMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const mpz_class& lhs_ik = at(i, k);
      if (lhs_ik == 0) continue;
      for (int j = 0; j < n_; ++j) out.at(i, j) += lhs_ik * rhs.at(k, j);
    }
  return out;
}

CountMatrix transition_power(const Sft& sft, long length) {
  if (length < 0) throw Error("path length must be nonnegative");
  CountMatrix result = CountMatrix::identity(sft.size());
  CountMatrix base = CountMatrix::from(sft);
  while (length > 0) {
    if (length & 1) result = result * base;
    length >>= 1;
    if (length > 0) base = base * base;
  }
  return result;
}

mpz_class count_paths(const Sft& sft, Symbol from, Symbol to, long length) {
  return transition_power(sft, length).at(from, to);
}

}  // namespace smale
