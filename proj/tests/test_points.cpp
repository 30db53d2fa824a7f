#include <set>
#include <string>

#include "doctest.h"

#include "smale/errors.hpp"
#include "smale/points.hpp"

using namespace smale;

namespace {

const Sft full2({{1, 1}, {1, 1}});
const Sft golden({{1, 1}, {1, 0}});
const Sft three({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}});

using Symbols = std::vector<Symbol>;

OrbitSet orbits(const Sft& sft, std::vector<Symbols> cycles) {
  std::vector<Orbit> out;
  for (const auto& c : cycles) out.push_back(Orbit::from_cycle(sft, c));
  return OrbitSet(out);
}

Periodic fixed(const Sft& sft, Symbol s) { return Periodic(Orbit::from_cycle(sft, Symbols{s}), 0); }

// Point with past `past` for n < begin, then `middle`, then `future`.
HeteroclinicPoint point(const Periodic& past, int begin, Symbols middle, const Periodic& future) {
  return HeteroclinicPoint(past, begin, std::move(middle), future);
}

std::string coordinates(const HeteroclinicPoint& z, int lo, int hi) {
  std::string out;
  for (int n = lo; n < hi; ++n) out += static_cast<char>('0' + z.at(n));
  return out;
}

long long matrix_entry_power(const Sft& sft, int i, int j, int length) {
  std::vector<long long> row(sft.size(), 0);
  row[i] = 1;
  for (int step = 0; step < length; ++step) {
    std::vector<long long> next(sft.size(), 0);
    for (int a = 0; a < sft.size(); ++a)
      for (int b = 0; b < sft.size(); ++b)
        if (sft.allowed(a, b)) next[b] += row[a];
    row = next;
  }
  return row[j];
}

// Independent count of X^h(P,Q) points inside [-W, W]: every admissible
// word on [-W, W) between every past phase at -W-1 and future phase at W.
long long expected_count(const Sft& sft, const OrbitSet& P, const OrbitSet& Q, int W) {
  long long total = 0;
  for (const Orbit& q : Q.orbits())
    for (int qs = 0; qs < q.period(); ++qs)
      for (const Orbit& p : P.orbits())
        for (int ps = 0; ps < p.period(); ++ps) {
          const Periodic past(q, qs);
          const Periodic future(p, ps);
          total += matrix_entry_power(sft, past.at(-W - 1), future.at(W), 2 * W + 1);
        }
  return total;
}

}  // namespace

TEST_CASE("orbits are validated and normalized") {
  CHECK(Orbit::from_cycle(full2, Symbols{1, 0}).cycle() == Symbols{0, 1});
  CHECK(Orbit::from_cycle(three, Symbols{2, 0, 1}).cycle() == Symbols{0, 1, 2});
  CHECK(Orbit::normalizing_rotation(Symbols{2, 0, 1}) == 1);
  CHECK_THROWS_AS(Orbit::from_cycle(golden, Symbols{1}), InadmissibleWord);
  CHECK_THROWS_AS(Orbit::from_cycle(golden, Symbols{0, 1, 1}), InadmissibleWord);
  CHECK_THROWS_AS(Orbit::from_cycle(full2, Symbols{0, 1, 0, 1}), InadmissibleWord);
  CHECK_THROWS_AS(Orbit::from_cycle(full2, Symbols{}), InadmissibleWord);
  CHECK_THROWS_AS(Orbit::from_cycle(full2, Symbols{2}), InadmissibleWord);
  CHECK_THROWS_AS(orbits(full2, {{0, 1}, {1, 0}}), InadmissibleWord);
}

TEST_CASE("orbit set disjointness") {
  CHECK(disjoint(orbits(full2, {{0}}), orbits(full2, {{1}})));
  CHECK_FALSE(disjoint(orbits(full2, {{0}, {0, 1}}), orbits(full2, {{1, 0}})));
}

TEST_CASE("anchored periodic tails") {
  const Periodic t = Periodic::anchored(three, Symbols{1, 2, 0}, 5, 2);
  CHECK(t.at(5) == 0);
  CHECK(t.at(6) == 1);
  CHECK(t.at(4) == 2);
  CHECK(t.at(-100) == t.at(-97));
  CHECK(t.shifted(1).at(5) == t.at(6));
  CHECK(Periodic::anchored(three, t.orbit().cycle(), 5, t.phase_at(5)) == t);
}

TEST_CASE("rays are canonical") {
  const Periodic ones = fixed(full2, 1);
  CHECK(LeftRay(ones, -2, {1, 1}) == LeftRay::periodic(ones, 0));
  CHECK(LeftRay(ones, -2, {1, 0}).start() == -1);
  CHECK(LeftRay(ones, -2, {1, 0}).body() == Symbols{0});
  const Periodic zeros = fixed(full2, 0);
  CHECK(RightRay(0, {1, 0, 0}, zeros) == RightRay(0, {1}, zeros));
  CHECK(RightRay(0, {0, 0}, zeros) == RightRay::periodic(zeros, 0));

  const LeftRay r(ones, -2, {0, 1});
  CHECK(r.terminal() == 1);
  CHECK(r.at(-2) == 0);
  CHECK(r.at(-3) == 1);
  CHECK(r.grown(0).end() == 1);
  CHECK(r.grown(0).truncated(0) == r);
  CHECK(r.shifted(2).end() == -2);
  CHECK(r.shifted(2).at(-4) == r.at(-2));
  const RightRay f(1, {1}, zeros);
  CHECK(f.grown(0).start() == 0);
  CHECK(f.grown(1).truncated(1) == f);
}

TEST_CASE("ray admissibility") {
  const Periodic zeros = fixed(golden, 0);
  CHECK(is_admissible(golden, LeftRay(zeros, 0, {1, 0, 1})));
  CHECK_FALSE(is_admissible(golden, LeftRay(zeros, 0, {1, 1})));
  CHECK(is_admissible(golden, RightRay(0, {1}, zeros)));
  CHECK_FALSE(is_admissible(golden, RightRay(0, {1, 1}, zeros)));
  CHECK_FALSE(is_admissible(three, LeftRay(fixed(three, 2), 0, {1})));
}

TEST_CASE("canonical form of heteroclinic points") {
  const Periodic ones = fixed(full2, 1);
  const Periodic zeros = fixed(full2, 0);
  const auto z = point(ones, -3, {1, 1, 0, 1, 0, 0}, zeros);
  CHECK(z.window_begin() == -1);
  CHECK(z.window_end() == 1);
  CHECK(z == point(ones, -1, {0, 1}, zeros));
  CHECK(z == HeteroclinicPoint::splice(z.past_ray(0), z.future_ray(0)));
  CHECK(coordinates(z, -3, 3) == "110100");
  // Canonicalization is idempotent.
  CHECK(point(z.past(), z.window_begin(), z.middle(), z.future()) == z);

  // Golden mean homoclinic point to 0^inf with empty window after trimming.
  const Periodic g0 = fixed(golden, 0);
  CHECK(point(g0, 4, {0, 0}, g0) == point(g0, 0, {}, g0));
  CHECK(point(g0, 4, {0, 0}, g0).window_begin() == 0);
  CHECK(point(g0, 0, {}, g0).window_end() == 0);
}

TEST_CASE("empty windows sit at the admissible splice nearest 0") {
  const Periodic ones = fixed(full2, 1);
  const Periodic zeros = fixed(full2, 0);
  // ...111 000... with the switch at index 5: window [5,5).
  const auto z = point(ones, 5, {}, zeros);
  CHECK(z.window_begin() == 5);
  CHECK(z.window_end() == 5);
  CHECK(z.middle().empty());
  // A periodic orbit of period 3 spliced onto itself with matching phase.
  const Periodic c(Orbit::from_cycle(three, Symbols{0, 1, 2}), 1);
  CHECK(point(c, -4, {c.at(-4), c.at(-3)}, c).window_begin() == 0);
}

TEST_CASE("shift_point") {
  const Periodic ones = fixed(full2, 1);
  const Periodic zeros = fixed(full2, 0);
  const auto p = point(zeros, 0, {}, zeros);
  for (int n : {-3, 0, 1, 7}) CHECK(shift_point(p, n) == p);
  const auto z = point(ones, 0, {}, zeros);
  CHECK(shift_point(z, 1) == point(ones, -1, {}, zeros));
  const auto w = point(fixed(three, 2), -2, {0, 1, 2, 0}, fixed(three, 0));
  CHECK(shift_point(shift_point(w, 3), -3) == w);
  for (int n = -4; n < 4; ++n) CHECK(shift_point(w, 2).at(n) == w.at(n + 2));
}

TEST_CASE("bracket") {
  const Periodic ones = fixed(full2, 1);
  const Periodic zeros = fixed(full2, 0);
  const auto x = point(ones, 0, {}, zeros);
  const auto y = point(zeros, 0, {}, zeros);
  CHECK(bracket(x, x) == x);
  CHECK(bracket(x, y) == y);
  const auto u = point(ones, -2, {0, 1, 1}, zeros);
  const auto v = point(zeros, -1, {1, 1, 0, 1}, ones);
  const auto b = bracket(u, v);
  for (int n = -6; n <= 0; ++n) CHECK(b.at(n) == v.at(n));
  for (int n = 0; n <= 6; ++n) CHECK(b.at(n) == u.at(n));

  const Periodic g0 = fixed(golden, 0);
  CHECK_THROWS_AS(bracket(point(g0, 0, {}, g0), point(g0, 0, {1}, g0)), IncompatibleAtZero);
}

TEST_CASE("enumeration examples") {
  const auto P = orbits(full2, {{0}});
  const auto Q = orbits(full2, {{1}});
  CHECK(enumerate_heteroclinic(full2, P, Q, 0).size() == 1);
  CHECK(enumerate_heteroclinic(full2, P, Q, 0).front() == point(fixed(full2, 1), 0, {}, fixed(full2, 0)));
  CHECK(enumerate_heteroclinic(full2, P, Q, 1).size() == 4);
  const auto G = orbits(golden, {{0}});
  const auto g = enumerate_heteroclinic(golden, G, G, 1);
  REQUIRE(g.size() == 3);
  std::set<std::string> patterns;
  for (const auto& z : g) patterns.insert(coordinates(z, -1, 1));
  CHECK(patterns == std::set<std::string>{"00", "01", "10"});
}

TEST_CASE("enumeration agrees with direct counting and is nested") {
  struct Case {
    const Sft& sft;
    OrbitSet P, Q;
  };
  const std::vector<Case> cases{
      {full2, orbits(full2, {{0}}), orbits(full2, {{1}})},
      {golden, orbits(golden, {{0}}), orbits(golden, {{0}})},
      {golden, orbits(golden, {{0}, {0, 1}}), orbits(golden, {{0, 1}})},
      {three, orbits(three, {{0}}), orbits(three, {{2}, {0, 1, 2}})},
  };
  for (const auto& c : cases) {
    std::vector<HeteroclinicPoint> previous;
    for (int W = 0; W <= 6; ++W) {
      const auto points = enumerate_heteroclinic(c.sft, c.P, c.Q, W);
      CHECK(std::is_sorted(points.begin(), points.end()));
      CHECK(std::adjacent_find(points.begin(), points.end()) == points.end());
      CHECK(static_cast<long long>(points.size()) == expected_count(c.sft, c.P, c.Q, W));
      std::set<std::string> seen;
      for (const auto& z : points) {
        CHECK(is_admissible(c.sft, z));
        CHECK(in_stable_class(z, c.P));
        CHECK(in_unstable_class(z, c.Q));
        CHECK(z.window_begin() >= -W);
        CHECK(z.window_end() <= W);
        CHECK(is_admissible(c.sft, shift_point(z, -2)));
        seen.insert(coordinates(z, -W - 12, W + 12));
      }
      CHECK(seen.size() == points.size());
      CHECK(std::includes(points.begin(), points.end(), previous.begin(), previous.end()));
      previous = points;
    }
  }
}

TEST_CASE("class membership") {
  const auto P = orbits(full2, {{0}});
  const auto Q = orbits(full2, {{1}});
  const auto z = point(fixed(full2, 1), 0, {0, 1}, fixed(full2, 0));
  CHECK(in_stable_class(z, P));
  CHECK(in_unstable_class(z, Q));
  CHECK_FALSE(in_unstable_class(z, P));
  const auto p = point(fixed(full2, 0), 0, {}, fixed(full2, 0));
  CHECK(in_stable_class(p, P));
  CHECK(in_unstable_class(p, P));
}

TEST_CASE("rays through words") {
  const Word w{-2, {2, 0, 1}};
  const LeftRay past = past_through(three, w);
  CHECK(past.end() == 1);
  CHECK(past.terminal() == 1);
  CHECK(past.at(-2) == 2);
  CHECK(is_admissible(three, past));
  const RightRay future = future_through(three, w);
  CHECK(future.start() == -2);
  CHECK(future.initial() == 2);
  CHECK(future.at(0) == 1);
  CHECK(is_admissible(three, future));
  CHECK_THROWS_AS(past_through(three, Word{0, {1, 1}}), InadmissibleWord);
  CHECK(orbit_through(three, 1).cycle() == Symbols{0, 1, 2});
  CHECK(orbit_through(three, 2).cycle() == Symbols{2});
}
