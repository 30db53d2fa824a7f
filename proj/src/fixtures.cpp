#include "smale/experiments.hpp"

namespace smale {

namespace {

using Symbols = std::vector<Symbol>;

LeftRay past(const Sft& sft, const Symbols& cycle, const Symbols& body, int window, int phase = 0) {
  const int start = window - static_cast<int>(body.size());
  return LeftRay(Periodic::anchored(sft, cycle, start, phase), start, body);
}

RightRay future(const Sft& sft, const Symbols& body, const Symbols& cycle, int window, int phase = 0) {
  const int end = window + static_cast<int>(body.size());
  return RightRay(window, body, Periodic::anchored(sft, cycle, end, phase));
}

StableElement stable(const Sft& sft, std::vector<std::pair<Complex, StableBisection>> terms) {
  return StableElement::reduce(sft, terms);
}

UnstableElement unstable(const Sft& sft, std::vector<std::pair<Complex, UnstableBisection>> terms) {
  return UnstableElement::reduce(sft, terms);
}

OrbitSet orbits(const Sft& sft, const std::vector<Symbols>& cycles) {
  std::vector<Orbit> out;
  for (const auto& c : cycles) out.push_back(Orbit::from_cycle(sft, c));
  return OrbitSet(std::move(out));
}

Fixture make_fixture(std::string name, Sft sft, OrbitSet P, OrbitSet Q, std::vector<StableElement> a,
                     std::vector<UnstableElement> b, int k_max, double trace_tol) {
  ExperimentConfig config{std::move(sft), std::move(P), std::move(Q), a.front(), b.front(), 0, 20, 6, 20, {}, {}};
  config.k_max = k_max;
  config.tolerances.trace_abs_err = trace_tol;
  config.output = name + ".csv";
  return Fixture{std::move(name), std::move(config), std::move(a), std::move(b)};
}

}  // namespace

Fixture full_two_shift() {
  Sft sft({{1, 1}, {1, 1}}, {"0", "1"});
  using SB = StableBisection;
  using UB = UnstableBisection;
  const Symbols zero{0};
  const Symbols one{1};
  std::vector<StableElement> a{
      stable(sft, {{1.0, SB::diagonal(past(sft, one, {}, 0))}}),
      stable(sft, {{1.0, SB(past(sft, one, {}, 0), past(sft, one, {0, 1}, 0))}}),
      stable(sft, {{{1.0, 1.0}, SB::diagonal(past(sft, one, {0}, 0))},
                   {3.0, SB(past(sft, one, {0}, 0), past(sft, one, {0, 0}, 0))}}),
      stable(sft, {{1.0, SB::diagonal(past(sft, one, {0, 1}, 2))}}),
  };
  std::vector<UnstableElement> b{
      unstable(sft, {{1.0, UB::diagonal(future(sft, {}, zero, 0))}}),
      unstable(sft, {{2.0, UB::diagonal(future(sft, {1}, zero, 0))}}),
      unstable(sft, {{1.0, UB(future(sft, {}, zero, -1), future(sft, {0, 1}, zero, -1))}}),
      unstable(sft, {{1.0, UB::diagonal(future(sft, {1, 1}, zero, -2))},
                     {-1.0, UB::diagonal(future(sft, {}, zero, -2))}}),
  };
  OrbitSet P = orbits(sft, {zero});
  OrbitSet Q = orbits(sft, {one});
  return make_fixture("full_two_shift", std::move(sft), std::move(P), std::move(Q), std::move(a), std::move(b), 20,
                      1e-12);
}

Fixture golden_mean() {
  Sft sft({{1, 1}, {1, 0}}, {"0", "1"});
  using SB = StableBisection;
  using UB = UnstableBisection;
  const Symbols zero{0};
  std::vector<StableElement> a{
      stable(sft, {{1.0, SB::diagonal(past(sft, zero, {}, 0))}}),
      golden_off_diagonal(),
      stable(sft, {{{2.0, -1.0}, SB::diagonal(past(sft, zero, {1}, 0))}}),
      stable(sft, {{1.0, SB(past(sft, zero, {1, 0}, 2), past(sft, zero, {}, 2))},
                   {-1.0, SB::diagonal(past(sft, zero, {0, 1}, 2))}}),
  };
  std::vector<UnstableElement> b{
      unstable(sft, {{1.0, UB::diagonal(future(sft, {}, zero, 0))}}),
      unstable(sft, {{1.0, UB::diagonal(future(sft, {1}, zero, 0))}}),
      unstable(sft, {{1.0, UB(future(sft, {0, 1}, zero, 0), future(sft, {}, zero, 0))}}),
      unstable(sft, {{{1.0, 2.0}, UB::diagonal(future(sft, {1}, zero, -1))}}),
  };
  OrbitSet P = orbits(sft, {zero});
  OrbitSet Q = orbits(sft, {zero});
  return make_fixture("golden_mean", std::move(sft), std::move(P), std::move(Q), std::move(a), std::move(b), 15,
                      1e-8);
}

StableElement golden_off_diagonal() {
  Sft sft({{1, 1}, {1, 0}}, {"0", "1"});
  const Symbols zero{0};
  // ...000 | versus ...010 | at window 0.
  return stable(sft, {{1.0, StableBisection(past(sft, zero, {}, 0), past(sft, zero, {1, 0}, 0))}});
}

Fixture three_symbol() {
  Sft sft({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}}, {"0", "1", "2"});
  using SB = StableBisection;
  using UB = UnstableBisection;
  const Symbols zero{0};
  const Symbols two{2};
  const Symbols cycle{0, 1, 2};
  std::vector<StableElement> a{
      stable(sft, {{1.0, SB::diagonal(past(sft, two, {}, 0))}}),
      stable(sft, {{1.0, SB::diagonal(past(sft, cycle, {}, 0))}}),
      stable(sft, {{1.0, SB(past(sft, two, {}, 0), past(sft, cycle, {}, 0))}}),
      stable(sft, {{1.0, SB::diagonal(past(sft, two, {0}, 1))}, {2.0, SB::diagonal(past(sft, two, {0, 1}, 1))}}),
  };
  std::vector<UnstableElement> b{
      unstable(sft, {{1.0, UB::diagonal(future(sft, {}, zero, 0))}}),
      unstable(sft, {{1.0, UB::diagonal(future(sft, {1, 2}, zero, 0))}}),
      unstable(sft, {{1.0, UB(future(sft, {}, zero, 0), future(sft, {0, 1, 2}, zero, 0))}}),
      unstable(sft, {{3.0, UB::diagonal(future(sft, {2}, zero, -1))}}),
  };
  OrbitSet P = orbits(sft, {zero});
  OrbitSet Q = orbits(sft, {two, cycle});
  return make_fixture("three_symbol", std::move(sft), std::move(P), std::move(Q), std::move(a), std::move(b), 30,
                      1e-10);
}

std::vector<Fixture> all_fixtures() { return {full_two_shift(), golden_mean(), three_symbol()}; }

}  // namespace smale
