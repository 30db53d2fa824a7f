#pragma once

// The fundamental representation of the stable and unstable algebras on
// l^2 of the heteroclinic points, exact traces Tr(alpha^k(a) alpha^-k(b)),
// finite rank products, and the checks built on them.

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "smale/algebra.hpp"
#include "smale/perron.hpp"
#include "smale/points.hpp"
#include "smale/sft.hpp"

namespace smale {

/// Finitely supported vector of l^2(X^h(P,Q)).
using StateVector = std::map<HeteroclinicPoint, Complex>;

/// Image of a basis point under one bisection, or nullopt outside its source.
std::optional<HeteroclinicPoint> apply_bisection(const StableBisection& e, const HeteroclinicPoint& w);
std::optional<HeteroclinicPoint> apply_bisection(const UnstableBisection& e, const HeteroclinicPoint& w);

template <class Ray>
StateVector apply_element(const Element<Ray>& x, const HeteroclinicPoint& w) {
  StateVector out;
  for (const auto& [e, c] : x.terms())
    if (auto image = apply_bisection(e, w)) out[*image] += c;
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0); });
  return out;
}

template <class Ray>
StateVector apply_element(const Element<Ray>& x, const StateVector& v) {
  StateVector out;
  for (const auto& [w, coeff] : v)
    for (const auto& [e, c] : x.terms())
      if (auto image = apply_bisection(e, w)) out[*image] += c * coeff;
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0); });
  return out;
}

/// apply_element(alpha^n(x), w) == u^n x u^-n delta_w for every sample, where
/// u delta_w = delta_{phi(w)}.
template <class Ray>
bool unitary_conjugation_check(const Element<Ray>& x, int n, std::span<const HeteroclinicPoint> samples) {
  const Element<Ray> conjugated = apply_alpha(x, n);
  for (const auto& w : samples) {
    StateVector lhs = apply_element(conjugated, w);
    StateVector rhs;
    for (const auto& [z, c] : apply_element(x, shift_point(w, -n))) rhs[shift_point(z, n)] += c;
    if (lhs != rhs) return false;
  }
  return true;
}

/// Finite matrix on l^2(X^h): (row, column) -> entry.
class FiniteOperator {
 public:
  using Key = std::pair<HeteroclinicPoint, HeteroclinicPoint>;

  void add(const HeteroclinicPoint& row, const HeteroclinicPoint& col, Complex value);
  const std::map<Key, Complex>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  FiniteOperator& operator+=(const FiniteOperator& rhs);
  FiniteOperator operator-(const FiniteOperator& rhs) const;
  FiniteOperator scaled(Complex c) const;

  bool operator==(const FiniteOperator&) const = default;

 private:
  std::map<Key, Complex> entries_;
};

/// Largest width of a free coordinate block enumerated when building products.
inline constexpr int kDefaultWindowCap = 20;

/// Exact matrices of a*b and b*a. Throws WindowOverflow when a free block
/// wider than `window_cap` would have to be enumerated.
FiniteOperator product_operator(const Sft& sft, const StableElement& a, const UnstableElement& b,
                                int window_cap = kDefaultWindowCap);
FiniteOperator product_operator(const Sft& sft, const UnstableElement& b, const StableElement& a,
                                int window_cap = kDefaultWindowCap);

/// Singular values of the finite matrix, largest first.
std::vector<double> singular_values(const FiniteOperator& op);
double operator_norm(const FiniteOperator& op);
int operator_rank(const FiniteOperator& op, double tol = 1e-10);

/// Exact weighted path count: sum of coefficient * (big integer count).
class ExactTrace {
 public:
  void add(Complex coefficient, const mpz_class& count);

  const std::vector<std::pair<Complex, mpz_class>>& terms() const { return terms_; }
  bool is_zero() const;

  /// Exact (real, imaginary) integer value when every coefficient has
  /// integral real and imaginary parts.
  std::optional<std::pair<mpz_class, mpz_class>> gaussian_integer() const;

  /// Sum of coefficient * count * exp(-log_divisor), evaluated without
  /// overflow for counts of any size.
  Complex scaled(double log_divisor) const;
  Complex approximate() const { return scaled(0.0); }

  /// Decimal rendering: exact integers when available, else %.17g.
  std::string str() const;

 private:
  std::vector<std::pair<Complex, mpz_class>> terms_;
};

struct TraceResult {
  ExactTrace value;
  /// Term pairs with an off-diagonal factor, and how many of them admit a
  /// fixed point of the round trip map (the set E_k).
  std::size_t off_diagonal_pairs = 0;
  std::size_t off_diagonal_fixed_points = 0;

  bool e_k_empty() const { return off_diagonal_fixed_points == 0; }
};

/// Exact Tr(alpha^k(a) alpha^-k(b)).
///
/// Term pairs whose constraint regions are disjoint contribute a path count
/// (diagonal pairs) or nothing (off-diagonal pairs). Overlapping pairs pin
/// every coordinate of the only candidate fixed point, which is checked
/// directly. `k` may be any integer.
TraceResult trace_product(const Sft& sft, const StableElement& a, const UnstableElement& b, int k);

/// Smallest enumeration window the brute-force oracle needs for (a, b, k).
int oracle_window(const StableElement& a, const UnstableElement& b, int k);

/// Brute-force trace: enumerate X^h(P,Q) inside [-window, window], apply both
/// operators to every basis vector, sum the diagonal. Throws WindowTooSmall.
Complex trace_product_oracle(const Sft& sft, const OrbitSet& P, const OrbitSet& Q, const StableElement& a,
                             const UnstableElement& b, int k, int window);

struct TraceRow {
  int k = 0;
  ExactTrace trace;
  Complex scaled;
  Complex target;
  double abs_err = 0.0;
};

struct TraceReport {
  Complex target;
  std::vector<TraceRow> rows;
};

/// Rows lambda^-2k Tr(alpha^k(a) alpha^-k(b)) against tau_s(a) tau_u(b) for
/// every k in `ks` (sorted ascending in the report). Independent k values
/// are evaluated on up to `threads` threads (0 = hardware concurrency).
TraceReport scaled_trace_sequence(const Sft& sft, const PerronData& perron, const StableElement& a,
                                  const UnstableElement& b, std::span<const int> ks, unsigned threads = 0);

/// CSV with header k,trace,scaled,target,abs_err.
std::string to_csv(const TraceReport& report);

struct VanishingReport {
  std::vector<int> n;
  std::vector<double> norm_ab;  // ||alpha^-n(a) b||
  std::vector<double> norm_ba;  // ||b alpha^-n(a)||
  /// Smallest n from which both products vanish for the rest of the range.
  std::optional<int> vanishes_from;
};

/// Norms of alpha^-n(a) b and b alpha^-n(a) for n = 0..n_max. Throws
/// OrbitsNotDisjoint unless P and Q are disjoint.
VanishingReport vanishing_product_check(const Sft& sft, const OrbitSet& P, const OrbitSet& Q,
                                        const StableElement& a, const UnstableElement& b, int n_max,
                                        int window_cap = kDefaultWindowCap);

/// Exact commutator alpha^n(a) alpha^-n(b) - alpha^-n(b) alpha^n(a).
FiniteOperator commutator(const Sft& sft, const StableElement& a, const UnstableElement& b, int n,
                          int window_cap = kDefaultWindowCap);

/// (n, ||commutator||) for each n.
std::vector<std::pair<int, double>> commutator_decay(const Sft& sft, const StableElement& a,
                                                     const UnstableElement& b, std::span<const int> ns,
                                                     int window_cap = kDefaultWindowCap);

}  // namespace smale
