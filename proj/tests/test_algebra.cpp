#include <cmath>

#include "doctest.h"

#include "smale/errors.hpp"
#include "smale/perron.hpp"
#include "support.hpp"

using namespace smale;
using namespace testing_support;
using doctest::Approx;

namespace {

const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

template <class Ray>
bool same(const Sft& sft, const Element<Ray>& a, const Element<Ray>& b) {
  return same_function(sft, a, b, 1e-12);
}

template <class Ray>
Element<Ray> mul(const Sft& sft, const Element<Ray>& a, const Element<Ray>& b) {
  return convolve(sft, a, b);
}

}  // namespace

TEST_CASE("bisections need a common window and junction symbol") {
  const Sft& s = full2();
  CHECK_NOTHROW(StableBisection(past(s, 1, {}, 0), past(s, 1, {0, 1}, 0)));
  CHECK_THROWS_AS(StableBisection(past(s, 1, {}, 0), past(s, 1, {}, 1)), InvalidBisection);
  // All-ones past versus all-ones-then-0 at index -1: terminal symbols differ.
  CHECK_THROWS_AS(StableBisection(past(s, 1, {}, 0), past(s, 1, {0}, 0)), InvalidBisection);
  CHECK_THROWS_AS(UnstableBisection(future(s, {1}, 0, 0), future(s, {}, 0, 0)), InvalidBisection);
}

TEST_CASE("refine") {
  const StableBisection e(past(full2(), 1, {}, 0), past(full2(), 1, {0, 1}, 0));
  CHECK(refine(full2(), e, 0) == std::vector<StableBisection>{e});
  CHECK(refine(full2(), e, 1).size() == 2);
  CHECK(refine(full2(), e, 3).size() == 8);
  CHECK_THROWS_AS(refine(full2(), e, -1), InvalidBisection);

  const StableBisection g = StableBisection::diagonal(past(golden(), 0, {1}, 0));
  const auto pieces = refine(golden(), g, 1);
  REQUIRE(pieces.size() == 1);
  CHECK(pieces.front().source.terminal() == 0);

  const UnstableBisection u = UnstableBisection::diagonal(future(golden(), {}, 0, 0));
  CHECK(refine(golden(), u, -1).size() == 2);
  CHECK(refine(golden(), u, -2).size() == 3);
  CHECK_THROWS_AS(refine(golden(), u, 1), InvalidBisection);
}

TEST_CASE("reduction merges, drops and refines") {
  const Sft& s = full2();
  const auto d = StableBisection::diagonal(past(s, 1, {}, 0));
  const auto a = StableElement::reduce(s, {{1.0, d}, {2.0, d}});
  CHECK(a.size() == 1);
  CHECK(a.terms().at(d) == Complex(3.0));
  CHECK(StableElement::reduce(s, {{1.0, d}, {-1.0, d}}).is_zero());
  CHECK(StableElement::reduce(s, {{1e-16, d}}).is_zero());
  CHECK_FALSE(StableElement().window().has_value());
  const auto mixed = StableElement::reduce(s, {{1.0, d}, {1.0, StableBisection::diagonal(past(s, 1, {0}, 1))}});
  CHECK(mixed.window() == 1);
  CHECK(mixed.size() == 2);
  CHECK(same(s, StableElement::single(d), StableElement::single(d).refined(s, 3)));
  CHECK(StableElement::single(d).refined(s, 3).size() == 8);
}

TEST_CASE("convolution of bisections") {
  const Sft& s = full2();
  const LeftRay x = past(s, 1, {}, 0);
  const LeftRay y = past(s, 1, {0, 1}, 0);
  const LeftRay z = past(s, 1, {1, 0, 1}, 0);
  const auto exy = StableElement::single(StableBisection(x, y));
  const auto eyz = StableElement::single(StableBisection(y, z));
  const auto exz = StableElement::single(StableBisection(x, z));
  CHECK(mul(s, exy, eyz) == exz);
  CHECK(mul(s, eyz, exy).is_zero());
  const auto p = StableElement::single(StableBisection::diagonal(x));
  CHECK(mul(s, p, p) == p);
  // Products across windows refine first: the window-0 projection contains
  // the window-2 cylinder of ...111|11.
  const auto deep = StableElement::single(StableBisection::diagonal(past(s, 1, {}, 2)));
  CHECK(mul(s, p, deep) == deep);
  CHECK(mul(s, deep, p) == deep);
  const auto other = StableElement::single(StableBisection::diagonal(past(s, 1, {0, 0, 0}, 2)));
  CHECK(mul(s, other, p).is_zero());
}

TEST_CASE("involution") {
  const Sft& s = full2();
  const LeftRay x = past(s, 1, {}, 0);
  const LeftRay y = past(s, 1, {0, 1}, 0);
  const auto p = StableElement::single(StableBisection::diagonal(x));
  CHECK(involute(p) == p);
  const auto e = StableElement::single(StableBisection(x, y), Complex(2.0, 1.0));
  CHECK(involute(e) == StableElement::single(StableBisection(y, x), Complex(2.0, -1.0)));
  CHECK(involute(involute(e)) == e);
}

TEST_CASE("star-algebra axioms on random elements") {
  struct Case {
    const Sft& sft;
    OrbitSet P, Q;
  };
  const std::vector<Case> cases{{full2(), orbits(full2(), {{0}}), orbits(full2(), {{1}})},
                                {golden(), orbits(golden(), {{0}}), orbits(golden(), {{0}, {0, 1}})},
                                {three(), orbits(three(), {{0}}), orbits(three(), {{2}, {0, 1, 2}})}};
  std::mt19937_64 rng(99);
  for (const auto& c : cases) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_stable(c.sft, c.Q, rng);
      const auto b = random_stable(c.sft, c.Q, rng);
      const auto d = random_stable(c.sft, c.Q, rng);
      CHECK(same(c.sft, mul(c.sft, mul(c.sft, a, b), d), mul(c.sft, a, mul(c.sft, b, d))));
      CHECK(same(c.sft, mul(c.sft, a, add(c.sft, b, d)), add(c.sft, mul(c.sft, a, b), mul(c.sft, a, d))));
      CHECK(same(c.sft, involute(mul(c.sft, a, b)), mul(c.sft, involute(b), involute(a))));
      for (int n : {-3, 1, 4}) {
        CHECK(same(c.sft, apply_alpha(mul(c.sft, a, b), n), mul(c.sft, apply_alpha(a, n), apply_alpha(b, n))));
        CHECK(apply_alpha(involute(a), n) == involute(apply_alpha(a, n)));
      }
      CHECK(apply_alpha(a, 0) == a);
      CHECK(apply_alpha(apply_alpha(a, 3), -3) == a);

      const auto u = random_unstable(c.sft, c.P, rng);
      const auto v = random_unstable(c.sft, c.P, rng);
      const auto w = random_unstable(c.sft, c.P, rng);
      CHECK(same(c.sft, mul(c.sft, mul(c.sft, u, v), w), mul(c.sft, u, mul(c.sft, v, w))));
      CHECK(same(c.sft, involute(mul(c.sft, u, v)), mul(c.sft, involute(v), involute(u))));
      CHECK(same(c.sft, apply_alpha(mul(c.sft, u, v), 2), mul(c.sft, apply_alpha(u, 2), apply_alpha(v, 2))));
    }
  }
}

TEST_CASE("trace examples") {
  const PerronData f = compute_perron(full2());
  const PerronData g = compute_perron(golden());
  CHECK(tau_s(StableElement::single(StableBisection::diagonal(past(full2(), 1, {}, 0))), f) == Complex(1.0));
  CHECK(std::abs(tau_s(StableElement::single(StableBisection::diagonal(past(golden(), 0, {}, 0))), g) - phi) <
        1e-12);
  CHECK(tau_s(StableElement::single(StableBisection(past(full2(), 1, {}, 0), past(full2(), 1, {0, 1}, 0))), f) ==
        Complex(0.0));
  CHECK(std::abs(tau_u(UnstableElement::single(UnstableBisection::diagonal(future(golden(), {}, 0, 0))), g) -
                 phi / std::sqrt(5.0)) < 1e-12);
  CHECK(tau_u(UnstableElement::single(UnstableBisection::diagonal(future(full2(), {}, 0, 0))), f) ==
        Complex(1.0));
  const auto c = StableElement::single(StableBisection::diagonal(past(full2(), 1, {}, 0)), Complex(2.0, -3.0));
  CHECK(tau_s(c, f) == Complex(2.0, -3.0));
}

TEST_CASE("the automorphism scales the traces by lambda and 1/lambda") {
  // Moving a past cylinder's window from N to N-1 multiplies its unstable
  // measure by lambda; the stable side divides.
  std::mt19937_64 rng(5);
  for (const Sft* sft : {&full2(), &golden(), &three()}) {
    const PerronData p = compute_perron(*sft);
    const OrbitSet P = orbits(*sft, {{0}});
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_stable(*sft, P, rng);
      const auto b = random_unstable(*sft, P, rng);
      for (int n : {1, 2, -1}) {
        const Complex ta = tau_s(apply_alpha(a, n), p);
        const Complex tb = tau_u(apply_alpha(b, n), p);
        CHECK(std::abs(ta - std::pow(p.lambda, n) * tau_s(a, p)) <= 1e-10 * (1 + std::abs(ta)));
        CHECK(std::abs(tb - std::pow(p.lambda, -n) * tau_u(b, p)) <= 1e-10 * (1 + std::abs(tb)));
      }
    }
  }
}

TEST_CASE("positivity and faithfulness of the traces") {
  std::mt19937_64 rng(17);
  for (const Sft* sft : {&full2(), &golden(), &three()}) {
    const PerronData p = compute_perron(*sft);
    const OrbitSet P = orbits(*sft, {{0}});
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_stable(*sft, P, rng);
      const Complex t = tau_s(convolve(*sft, involute(a), a), p);
      CHECK(std::abs(t.imag()) <= 1e-12);
      CHECK(t.real() > 0.0);
      const auto b = random_unstable(*sft, P, rng);
      const Complex s = tau_u(convolve(*sft, involute(b), b), p);
      CHECK(std::abs(s.imag()) <= 1e-12);
      CHECK(s.real() > 0.0);
    }
    CHECK(tau_s(convolve(*sft, involute(StableElement()), StableElement()), p) == Complex(0.0));
  }
}

TEST_CASE("trace property") {
  const Sft& s = golden();
  const PerronData g = compute_perron(s);
  const LeftRay x = past(s, 0, {}, 0);
  const LeftRay y = past(s, 0, {1, 0}, 0);
  const auto exy = StableElement::single(StableBisection(x, y));
  const auto eyx = StableElement::single(StableBisection(y, x));
  // tau(e_xy e_yx) is the measure of x's cylinder, tau(e_yx e_xy) of y's.
  CHECK(tau_s(convolve(s, exy, eyx), g).real() == Approx(mu_u(s, g, x)).epsilon(1e-15));
  CHECK(tau_s(convolve(s, eyx, exy), g).real() == Approx(mu_u(s, g, y)).epsilon(1e-15));
  CHECK(trace_property_check(s, exy, eyx, g));
  const auto p = StableElement::single(StableBisection::diagonal(x));
  const auto q = StableElement::single(StableBisection::diagonal(y));
  CHECK(trace_property_check(s, p, q, g));

  std::mt19937_64 rng(23);
  const OrbitSet P = orbits(s, {{0}});
  for (int trial = 0; trial < 50; ++trial) {
    CHECK(trace_property_check(s, random_stable(s, P, rng), random_stable(s, P, rng), g));
    CHECK(trace_property_check(s, random_unstable(s, P, rng), random_unstable(s, P, rng), g));
  }
}

TEST_CASE("leaf measure normalization can be swapped in for the traces") {
  const PerronData g = compute_perron(golden());
  const LeafMeasures standard = LeafMeasures::standard(g);
  const LeafMeasures split(g, 2.0, g.lambda / 2.0);
  const auto a = StableElement::single(StableBisection::diagonal(past(golden(), 0, {}, 0)));
  const auto b = UnstableElement::single(UnstableBisection::diagonal(future(golden(), {}, 0, 0)));
  CHECK(tau_s(a, standard) == tau_s(a, g));
  CHECK(std::abs(tau_s(a, split) * tau_u(b, split) - tau_s(a, g) * tau_u(b, g)) < 1e-12);
}
