#pragma once

// Small builders shared by the test binaries.

#include <random>
#include <vector>

#include "smale/algebra.hpp"
#include "smale/points.hpp"

namespace testing_support {

using namespace smale;
using Symbols = std::vector<Symbol>;

inline const Sft& full2() {
  static const Sft s({{1, 1}, {1, 1}});
  return s;
}
inline const Sft& golden() {
  static const Sft s({{1, 1}, {1, 0}});
  return s;
}
inline const Sft& three() {
  static const Sft s({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}});
  return s;
}

inline Periodic fixed(const Sft& sft, Symbol s) { return Periodic(Orbit::from_cycle(sft, Symbols{s}), 0); }

inline OrbitSet orbits(const Sft& sft, const std::vector<Symbols>& cycles) {
  std::vector<Orbit> out;
  for (const auto& c : cycles) out.push_back(Orbit::from_cycle(sft, c));
  return OrbitSet(out);
}

/// Past ending at `window`: tail symbol `tail`, then `body` just before window.
inline LeftRay past(const Sft& sft, Symbol tail, Symbols body, int window) {
  const int start = window - static_cast<int>(body.size());
  return LeftRay(fixed(sft, tail), start, std::move(body));
}

/// Future starting at `window`: `body`, then tail symbol `tail`.
inline RightRay future(const Sft& sft, Symbols body, Symbol tail, int window) {
  return RightRay(window, std::move(body), fixed(sft, tail));
}

inline HeteroclinicPoint point(const Sft& sft, Symbol past_tail, int begin, Symbols middle, Symbol future_tail) {
  return HeteroclinicPoint(fixed(sft, past_tail), begin, std::move(middle), fixed(sft, future_tail));
}

inline LeftRay random_past(const Sft& sft, const OrbitSet& Q, int window, std::mt19937_64& rng) {
  const Orbit& orbit = Q.orbits()[std::uniform_int_distribution<std::size_t>(0, Q.orbits().size() - 1)(rng)];
  const int grow = std::uniform_int_distribution<int>(0, 3)(rng);
  LeftRay ray = LeftRay::periodic(
      Periodic(orbit, std::uniform_int_distribution<int>(0, orbit.period() - 1)(rng)), window - grow);
  for (int i = 0; i < grow; ++i) {
    auto next = sft.successors(ray.terminal());
    ray = ray.grown(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
  }
  return ray;
}

inline RightRay random_future(const Sft& sft, const OrbitSet& P, int window, std::mt19937_64& rng) {
  const Orbit& orbit = P.orbits()[std::uniform_int_distribution<std::size_t>(0, P.orbits().size() - 1)(rng)];
  const int grow = std::uniform_int_distribution<int>(0, 3)(rng);
  RightRay ray(window + grow, {},
               Periodic(orbit, std::uniform_int_distribution<int>(0, orbit.period() - 1)(rng)));
  for (int i = 0; i < grow; ++i) {
    auto prev = sft.predecessors(ray.initial());
    ray = ray.grown(prev[std::uniform_int_distribution<std::size_t>(0, prev.size() - 1)(rng)]);
  }
  return ray;
}

template <class Ray, class Draw>
Element<Ray> random_element(const Sft& sft, std::mt19937_64& rng, Draw draw, int max_terms = 3) {
  std::vector<typename Element<Ray>::Term> terms;
  const int count = std::uniform_int_distribution<int>(1, max_terms)(rng);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < count; ++t) {
    const int w = std::uniform_int_distribution<int>(-2, 2)(rng);
    Ray source = draw(w);
    Ray target = source;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Ray candidate = draw(w);
      if (candidate.junction() == source.junction()) {
        target = candidate;
        break;
      }
    }
    Complex c(coeff(rng), coeff(rng));
    if (c == Complex(0.0)) c = 1.0;
    terms.emplace_back(c, Bisection<Ray>(target, source));
  }
  return Element<Ray>::reduce(sft, terms);
}

inline StableElement random_stable(const Sft& sft, const OrbitSet& Q, std::mt19937_64& rng, int max_terms = 3) {
  return random_element<LeftRay>(sft, rng, [&](int w) { return random_past(sft, Q, w, rng); }, max_terms);
}

inline UnstableElement random_unstable(const Sft& sft, const OrbitSet& P, std::mt19937_64& rng, int max_terms = 3) {
  return random_element<RightRay>(sft, rng, [&](int w) { return random_future(sft, P, w, rng); }, max_terms);
}

}  // namespace testing_support
