#pragma once

// Locally constant functions on the stable and unstable groupoids.
//
// A stable bisection e(target, source) at window N is the graph of the map
// that replaces the coordinates < N of a point equal to `source` there by
// `target`; both rays end in the same symbol so the replacement is defined on
// the whole source cylinder. Unstable bisections replace coordinates >= M.
// Elements are finite complex combinations of bisections, kept reduced: all
// terms refined to one common window, identical bisections merged, tiny
// coefficients dropped. At a common window distinct bisections have disjoint
// graphs, so the reduced term map is the function itself.

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "smale/errors.hpp"
#include "smale/perron.hpp"
#include "smale/points.hpp"
#include "smale/sft.hpp"

namespace smale {

using Complex = std::complex<double>;

/// Coefficients with magnitude below this are dropped during reduction.
inline constexpr double kCoefficientEpsilon = 1e-15;

template <class Ray>
struct Bisection {
  Ray target;
  Ray source;

  /// Throws InvalidBisection unless both rays share window and junction symbol.
  Bisection(Ray target_ray, Ray source_ray) : target(std::move(target_ray)), source(std::move(source_ray)) {
    if (target.window() != source.window()) throw InvalidBisection("bisection rays end at different windows");
    if (target.junction() != source.junction()) {
      throw InvalidBisection("bisection rays must meet the free coordinates with the same symbol");
    }
  }
  static Bisection diagonal(const Ray& ray) { return Bisection(ray, ray); }

  int window() const { return source.window(); }
  bool is_diagonal() const { return target == source; }
  Bisection shifted(int n) const { return Bisection(target.shifted(n), source.shifted(n)); }
  Bisection inverse() const { return Bisection(source, target); }

  auto operator<=>(const Bisection&) const = default;
};

using StableBisection = Bisection<LeftRay>;
using UnstableBisection = Bisection<RightRay>;

/// True when window `a` constrains strictly more coordinates than `b`.
template <class Ray>
constexpr bool deeper(int a, int b) {
  return a * Ray::kGrowthDirection > b * Ray::kGrowthDirection;
}

/// Partition of e's graph into bisections at `window` (at least as deep as e's).
template <class Ray>
std::vector<Bisection<Ray>> refine(const Sft& sft, const Bisection<Ray>& e, int window) {
  if (deeper<Ray>(e.window(), window)) throw InvalidBisection("cannot refine to a shallower window");
  std::vector<Bisection<Ray>> current{e};
  while (current.front().window() != window) {
    std::vector<Bisection<Ray>> next;
    for (const auto& b : current)
      for (Symbol s : Ray::growth_symbols(sft, b.source.junction()))
        next.emplace_back(b.target.grown(s), b.source.grown(s));
    current = std::move(next);
  }
  return current;
}

template <class Ray>
class Element {
 public:
  using BisectionType = Bisection<Ray>;
  using Term = std::pair<Complex, BisectionType>;

  Element() = default;

  /// Reduced element from arbitrary terms (any windows, repeats allowed).
  static Element reduce(const Sft& sft, const std::vector<Term>& terms) {
    Element out;
    if (terms.empty()) return out;
    int window = terms.front().second.window();
    for (const auto& [c, e] : terms)
      if (deeper<Ray>(e.window(), window)) window = e.window();
    for (const auto& [c, e] : terms)
      for (auto& piece : refine(sft, e, window)) out.terms_[std::move(piece)] += c;
    out.prune();
    out.window_ = window;
    return out;
  }
  static Element single(const BisectionType& e, Complex c = 1.0) {
    Element out;
    if (std::abs(c) >= kCoefficientEpsilon) {
      out.terms_.emplace(e, c);
      out.window_ = e.window();
    }
    return out;
  }

  const std::map<BisectionType, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Common window of the terms; empty for the zero element.
  std::optional<int> window() const { return is_zero() ? std::nullopt : std::optional<int>(window_); }

  /// Same element refined to a deeper window.
  Element refined(const Sft& sft, int window) const {
    std::vector<Term> pieces;
    for (const auto& [e, c] : terms_)
      for (auto& piece : refine(sft, e, window)) pieces.emplace_back(c, std::move(piece));
    Element out = reduce(sft, pieces);
    return out;
  }

  Element scaled(Complex c) const {
    Element out = *this;
    for (auto& [e, coeff] : out.terms_) coeff *= c;
    out.prune();
    return out;
  }

  /// Exact equality of the represented functions.
  friend bool same_function(const Sft& sft, const Element& a, const Element& b, double tol = 0.0) {
    Element diff = add(sft, a, b.scaled(-1.0));
    for (const auto& [e, c] : diff.terms_)
      if (std::abs(c) > tol) return false;
    return true;
  }

  friend Element add(const Sft& sft, const Element& a, const Element& b) {
    std::vector<Term> all;
    for (const auto& [e, c] : a.terms_) all.emplace_back(c, e);
    for (const auto& [e, c] : b.terms_) all.emplace_back(c, e);
    return reduce(sft, all);
  }

  /// Applies an injective, window-uniform transformation to every term.
  template <class F>
  Element map_terms(F f) const {
    Element out;
    for (const auto& [e, c] : terms_) {
      auto [e2, c2] = f(e, c);
      out.window_ = e2.window();
      out.terms_.emplace(std::move(e2), c2);
    }
    out.prune();
    return out;
  }

  bool operator==(const Element& other) const { return terms_ == other.terms_; }

 private:
  void prune() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kCoefficientEpsilon; });
  }

  std::map<BisectionType, Complex> terms_;
  int window_ = 0;
};

using StableElement = Element<LeftRay>;
using UnstableElement = Element<RightRay>;

/// Groupoid convolution: e(a,b) * e(b,c) = e(a,c), other products vanish.
template <class Ray>
Element<Ray> convolve(const Sft& sft, const Element<Ray>& a, const Element<Ray>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  int window = *a.window();
  if (deeper<Ray>(*b.window(), window)) window = *b.window();
  const Element<Ray> lhs = a.refined(sft, window);
  const Element<Ray> rhs = b.refined(sft, window);
  std::multimap<Ray, std::pair<Complex, const Ray*>> by_target;
  for (const auto& [e, c] : rhs.terms()) by_target.emplace(e.target, std::make_pair(c, &e.source));
  std::vector<typename Element<Ray>::Term> out;
  for (const auto& [e, c] : lhs.terms()) {
    auto [lo, hi] = by_target.equal_range(e.source);
    for (auto it = lo; it != hi; ++it) out.emplace_back(c * it->second.first, Bisection<Ray>(e.target, *it->second.second));
  }
  return Element<Ray>::reduce(sft, out);
}

/// a*(x, y) = conj(a(y, x)).
template <class Ray>
Element<Ray> involute(const Element<Ray>& a) {
  return a.map_terms([](const Bisection<Ray>& e, Complex c) { return std::make_pair(e.inverse(), std::conj(c)); });
}

/// alpha^n(a)(x, y) = a(phi^-n x, phi^-n y): every ray index moves down by n.
template <class Ray>
Element<Ray> apply_alpha(const Element<Ray>& a, int n) {
  return a.map_terms([n](const Bisection<Ray>& e, Complex c) { return std::make_pair(e.shifted(n), c); });
}

/// Sum of diagonal coefficients weighted by the leaf measure of the domain
/// cylinder: mu_u on the stable side, mu_s on the unstable side.
Complex tau_s(const StableElement& a, const PerronData& perron);
Complex tau_u(const UnstableElement& b, const PerronData& perron);
Complex tau_s(const StableElement& a, const LeafMeasures& measures);
Complex tau_u(const UnstableElement& b, const LeafMeasures& measures);

inline Complex trace_of(const StableElement& a, const PerronData& p) { return tau_s(a, p); }
inline Complex trace_of(const UnstableElement& b, const PerronData& p) { return tau_u(b, p); }

/// |tau(ab) - tau(ba)| <= tol.
template <class Ray>
bool trace_property_check(const Sft& sft, const Element<Ray>& a, const Element<Ray>& b, const PerronData& perron,
                          double tol = 1e-10) {
  Complex ab = trace_of(convolve(sft, a, b), perron);
  Complex ba = trace_of(convolve(sft, b, a), perron);
  return std::abs(ab - ba) <= tol;
}

}  // namespace smale
