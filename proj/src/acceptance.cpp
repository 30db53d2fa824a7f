#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>

#include "smale/errors.hpp"
#include "smale/experiments.hpp"
#include "smale/representation.hpp"

namespace smale {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

// Runs `body`, fills in timing, and turns library exceptions into failures.
CheckResult timed(std::string name, double runtime_limit, const std::function<void(CheckResult&)>& body) {
  CheckResult result;
  result.name = std::move(name);
  const auto start = Clock::now();
  try {
    body(result);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("error: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (result.passed && result.seconds > runtime_limit) {
    result.passed = false;
    result.detail += fmt(" (runtime %.2fs over limit %.0fs)", result.seconds, runtime_limit);
  }
  return result;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> out(static_cast<std::size_t>(hi - lo + 1));
  std::iota(out.begin(), out.end(), lo);
  return out;
}

void for_each_word(const Sft& sft, int max_length, const std::function<void(const std::vector<Symbol>&)>& visit) {
  std::vector<Symbol> word;
  std::function<void(Symbol)> extend = [&](Symbol s) {
    word.push_back(s);
    visit(word);
    if (static_cast<int>(word.size()) < max_length)
      for (Symbol next : sft.successors(s)) extend(next);
    word.pop_back();
  };
  for (Symbol s = 0; s < sft.size(); ++s) extend(s);
}

double relative(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

// ---------------------------------------------------------------- random

Complex random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> part(-3, 3);
  Complex c;
  do c = Complex(part(rng), part(rng));
  while (c == Complex(0.0));
  return c;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  std::uniform_int_distribution<std::size_t> index(0, items.size() - 1);
  return items[index(rng)];
}

LeftRay random_past(const Sft& sft, const OrbitSet& Q, int window, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> length(0, 3);
  const Orbit& orbit = pick(rng, Q.orbits());
  std::uniform_int_distribution<int> phase(0, orbit.period() - 1);
  const int grow = length(rng);
  LeftRay ray = LeftRay::periodic(Periodic(orbit, phase(rng)), window - grow);
  for (int i = 0; i < grow; ++i) {
    const auto next = sft.successors(ray.terminal());
    ray = ray.grown(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
  }
  return ray;
}

RightRay random_future(const Sft& sft, const OrbitSet& P, int window, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> length(0, 3);
  const Orbit& orbit = pick(rng, P.orbits());
  std::uniform_int_distribution<int> phase(0, orbit.period() - 1);
  const int grow = length(rng);
  RightRay ray(window + grow, {}, Periodic(orbit, phase(rng)));
  for (int i = 0; i < grow; ++i) {
    const auto prev = sft.predecessors(ray.initial());
    ray = ray.grown(prev[std::uniform_int_distribution<std::size_t>(0, prev.size() - 1)(rng)]);
  }
  return ray;
}

// A random element with 1..3 terms; targets are redrawn until they match the
// source's junction symbol, falling back to a diagonal term.
template <class Ray, class Draw>
Element<Ray> random_element(const Sft& sft, std::mt19937_64& rng, Draw draw) {
  std::uniform_int_distribution<int> terms(1, 3);
  std::uniform_int_distribution<int> window(-2, 2);
  std::vector<typename Element<Ray>::Term> out;
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    const int w = window(rng);
    Ray source = draw(w);
    Ray target = source;
    for (int attempt = 0; attempt < 50; ++attempt) {
      Ray candidate = draw(w);
      if (candidate.junction() == source.junction()) {
        target = std::move(candidate);
        break;
      }
    }
    out.emplace_back(random_coefficient(rng), Bisection<Ray>(std::move(target), std::move(source)));
  }
  return Element<Ray>::reduce(sft, out);
}

}  // namespace

// ------------------------------------------------------------ summaries

bool RunSummary::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void RunSummary::print(std::ostream& out) const {
  for (const auto& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-4s %-40s measured=%-12.4g tol=%-10.3g %.3fs", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.tolerance, c.seconds);
    out << buf;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  const auto passed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  out << passed << "/" << checks.size() << " checks passed\n";
}

// ------------------------------------------------------ measure identities

MeasureIdentityReport measure_identities(const Sft& sft, const LeafMeasures& measures, int max_length) {
  MeasureIdentityReport report;
  const PerronData& perron = measures.perron();
  const double lambda = perron.lambda;

  double mass = 0.0;
  for (Symbol s = 0; s < sft.size(); ++s) mass += mu_bowen(sft, perron, Word{0, {s}});
  report.total_mass = std::abs(mass - 1.0);

  for_each_word(sft, max_length, [&](const std::vector<Symbol>& symbols) {
    ++report.words;
    const int length = static_cast<int>(symbols.size());
    const int first = -(length - 1) / 2;
    const int last = first + length - 1;
    const Word word{first, symbols};

    const double bowen = mu_bowen(sft, perron, word);
    const double split = measures.unstable(symbols.back(), last + 1) * measures.stable(symbols.front(), first);
    report.product = std::max(report.product, std::abs(bowen - split));

    const LeftRay past = past_through(sft, word);
    const RightRay future = future_through(sft, word);
    const double u = measures.mu_u(past);
    const double s = measures.mu_s(future);
    report.scaling = std::max({report.scaling, relative(measures.mu_u(past.shifted(1)), lambda * u),
                               relative(measures.mu_s(future.shifted(1)), s / lambda)});

    double u_parts = 0.0;
    for (Symbol next : sft.successors(past.terminal())) u_parts += measures.mu_u(past.grown(next));
    double s_parts = 0.0;
    for (Symbol prev : sft.predecessors(future.initial())) s_parts += measures.mu_s(future.grown(prev));
    report.additivity = std::max({report.additivity, relative(u_parts, u), relative(s_parts, s)});
  });
  return report;
}

// ------------------------------------------------------------- criteria

CheckResult ac1_exact_regime() {
  return timed("AC-1 exact trace regime (full 2-shift)", 1.0, [](CheckResult& r) {
    const Fixture f = full_two_shift();
    const auto& c = f.config;
    const PerronData perron = compute_perron(c.sft);
    const auto ks = range(0, 20);
    const TraceReport report = scaled_trace_sequence(c.sft, perron, c.a, c.b, ks);
    r.tolerance = 1e-12;
    r.measured = std::abs(report.target - Complex(1.0));
    bool exact = true;
    for (const auto& row : report.rows) {
      r.measured = std::max({r.measured, row.abs_err, std::abs(row.scaled - Complex(1.0))});
      const auto value = row.trace.gaussian_integer();
      const mpz_class expected = mpz_class(1) << (2 * row.k);
      if (!value || value->first != expected || value->second != 0) exact = false;
    }
    r.passed = exact && r.measured <= r.tolerance;
    r.detail = exact ? "Tr = 4^k exactly for k = 0..20" : "trace differs from 4^k";
  });
}

CheckResult ac2_convergent_regime() {
  return timed("AC-2 convergent regime (golden mean)", 5.0, [](CheckResult& r) {
    const Fixture f = golden_mean();
    const auto& c = f.config;
    const PerronData perron = compute_perron(c.sft);
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double limit = phi * phi / std::sqrt(5.0);
    const auto ks = range(0, 200);
    const TraceReport report = scaled_trace_sequence(c.sft, perron, c.a, c.b, ks);

    bool fibonacci = true;
    double closed_form = 0.0;
    double tail = 0.0;
    for (const auto& row : report.rows) {
      mpz_class fib;
      mpz_fib_ui(fib.get_mpz_t(), static_cast<unsigned long>(2 * row.k + 2));
      const auto value = row.trace.gaussian_integer();
      if (!value || value->first != fib || value->second != 0) fibonacci = false;
      const double predicted = std::pow(phi, -4.0 * row.k - 2.0) / std::sqrt(5.0);
      closed_form = std::max(closed_form, std::abs(row.abs_err - predicted));
      if (row.k >= 8) tail = std::max(tail, row.abs_err);
    }
    const double target_err = std::abs(report.target - Complex(limit));
    r.measured = tail;
    r.tolerance = 1e-7;
    r.passed = fibonacci && closed_form <= 1e-12 && tail <= 1e-7 && target_err <= 1e-10;
    char buf[200];
    std::snprintf(buf, sizeof buf, "Fib(2k+2) %s to k=200; |err - phi^(-4k-2)/sqrt5| <= %.2e; target off by %.2e",
                  fibonacci ? "exact" : "MISMATCH", closed_form, target_err);
    r.detail = buf;
  });
}

CheckResult ac3_off_diagonal_vanishing() {
  return timed("AC-3 off-diagonal traces vanish", 1.0, [](CheckResult& r) {
    const Fixture f = golden_mean();
    const StableElement a = golden_off_diagonal();
    const UnstableElement& b = f.unstable_samples.front();
    int nonzero = 0;
    int nonempty = 0;
    for (int k = 0; k <= 20; ++k) {
      const TraceResult t = trace_product(f.config.sft, a, b, k);
      if (!t.value.is_zero()) ++nonzero;
      if (!t.e_k_empty()) ++nonempty;
    }
    r.measured = nonzero;
    r.tolerance = 0.0;
    r.passed = nonzero == 0 && nonempty == 0;
    r.detail = "k = 0..20: " + std::to_string(nonzero) + " nonzero traces, " + std::to_string(nonempty) +
               " nonempty fixed-point sets";
  });
}

CheckResult ac4_measure_identities() {
  return timed("AC-4 leaf measure identities", 10.0, [](CheckResult& r) {
    r.tolerance = 1e-10;
    bool ok = true;
    std::size_t words = 0;
    for (const Fixture& f : all_fixtures()) {
      const PerronData perron = compute_perron(f.config.sft);
      const auto report = measure_identities(f.config.sft, LeafMeasures::standard(perron), 8);
      words += report.words;
      r.measured = std::max({r.measured, report.product, report.additivity});
      ok = ok && report.product <= 1e-10 && report.additivity <= 1e-10 && report.scaling <= 1e-12 &&
           report.total_mass <= 1e-12;
    }
    r.passed = ok;
    r.detail = std::to_string(words) + " words of length <= 8 on 3 shifts";
  });
}

CheckResult ac5_oracle_equivalence() {
  return timed("AC-5 exact trace equals brute force", 30.0, [](CheckResult& r) {
    constexpr int kMaxWindow = 10;
    int compared = 0;
    int skipped = 0;
    int mismatches = 0;
    for (const Fixture& f : all_fixtures()) {
      const auto& c = f.config;
      for (const auto& a : f.stable_samples)
        for (const auto& b : f.unstable_samples)
          for (int k = 0; k <= 5; ++k) {
            const int window = oracle_window(a, b, k);
            if (window > kMaxWindow) {
              ++skipped;
              continue;
            }
            const Complex exact = trace_product(c.sft, a, b, k).value.approximate();
            const Complex brute = trace_product_oracle(c.sft, c.P, c.Q, a, b, k, window);
            ++compared;
            if (exact != brute) ++mismatches;
          }
    }
    r.measured = mismatches;
    r.tolerance = 0.0;
    r.passed = mismatches == 0 && compared > 0;
    r.detail = std::to_string(compared) + " cases compared, " + std::to_string(skipped) + " beyond window " +
               std::to_string(kMaxWindow);
  });
}

CheckResult ac6_finite_rank_products() {
  return timed("AC-6 finite rank and vanishing products", 10.0, [](CheckResult& r) {
    std::string notes;
    bool ok = true;

    const Fixture full = full_two_shift();
    const int rank = operator_rank(product_operator(full.config.sft, full.config.a, full.config.b));
    const int rank_ba = operator_rank(product_operator(full.config.sft, full.config.b, full.config.a));
    ok = ok && rank == 1 && rank_ba == 1;
    notes += "rank(ab) = " + std::to_string(rank) + ", rank(ba) = " + std::to_string(rank_ba);

    int worst_rank = 0;
    for (const Fixture& f : all_fixtures())
      for (const auto& a : f.stable_samples)
        for (const auto& b : f.unstable_samples) {
          worst_rank = std::max(worst_rank, operator_rank(product_operator(f.config.sft, a, b)));
          worst_rank = std::max(worst_rank, operator_rank(product_operator(f.config.sft, b, a)));
        }
    notes += "; sample ranks <= " + std::to_string(worst_rank);

    for (const Fixture& f : {full, three_symbol()}) {
      const auto& c = f.config;
      const VanishingReport v = vanishing_product_check(c.sft, c.P, c.Q, c.a, c.b, 20);
      for (std::size_t i = 0; i < v.n.size(); ++i)
        if (v.n[i] >= 1) {
          r.measured = std::max(r.measured, v.norm_ab[i]);
          ok = ok && v.norm_ab[i] == 0.0;
        }
    }

    int decoupled = 0;
    int nontrivial = 0;
    for (const Fixture& f : all_fixtures())
      for (const auto& a : f.stable_samples)
        for (const auto& b : f.unstable_samples) {
          const auto decay = commutator_decay(f.config.sft, a, b, range(0, 15));
          auto first_zero = std::find_if(decay.begin(), decay.end(), [](const auto& p) { return p.second == 0.0; });
          const bool stays = first_zero != decay.end() &&
                             std::all_of(first_zero, decay.end(), [](const auto& p) { return p.second == 0.0; });
          ok = ok && stays;
          if (decay.front().second > 0.0) ++nontrivial;
          if (stays) ++decoupled;
        }
    notes += "; " + std::to_string(decoupled) + " commutator sequences (" + std::to_string(nontrivial) +
             " nonzero at n = 0) reach 0 and stay there";
    r.tolerance = 0.0;
    r.passed = ok;
    r.detail = notes;
  });
}

CheckResult ac7_perron() {
  return timed("AC-7 Perron data and Parry cylinders", 1.0, [](CheckResult& r) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const Fixture golden_fixture = golden_mean();
    const Fixture full_fixture = full_two_shift();
    const Sft& g = golden_fixture.config.sft;
    const Sft& s = full_fixture.config.sft;
    const PerronData golden = compute_perron(g);
    const PerronData full = compute_perron(s);
    const PerronData three = compute_perron(three_symbol().config.sft);
    const double lambda_err = std::abs(golden.lambda - phi);
    const double residual = std::max({golden.residual, full.residual, three.residual});
    const double parry = std::max({std::abs(mu_bowen(s, full, Word{0, {0}}) - 0.5),
                                   std::abs(mu_bowen(s, full, Word{0, {1}}) - 0.5),
                                   std::abs(mu_bowen(g, golden, Word{0, {0}}) - (5.0 + std::sqrt(5.0)) / 10.0),
                                   std::abs(mu_bowen(g, golden, Word{0, {1}}) - (5.0 - std::sqrt(5.0)) / 10.0)});
    r.measured = lambda_err;
    r.tolerance = 1e-12;
    r.passed = lambda_err <= 1e-12 && residual <= 1e-12 && parry <= 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf, "max residual %.2e, Parry 1-cylinder error %.2e", residual, parry);
    r.detail = buf;
  });
}

CheckResult ac8_trace_property() {
  return timed("AC-8 trace property on random pairs", 10.0, [](CheckResult& r) {
    constexpr int kPairs = 50;
    int failures = 0;
    int checked = 0;
    std::uint64_t seed = 0x5eed2024;
    for (const Fixture& f : all_fixtures()) {
      const auto& c = f.config;
      const PerronData perron = compute_perron(c.sft);
      std::mt19937_64 rng(seed++);
      auto past = [&](int w) { return random_past(c.sft, c.Q, w, rng); };
      auto future = [&](int w) { return random_future(c.sft, c.P, w, rng); };
      for (int i = 0; i < kPairs; ++i) {
        const auto a1 = random_element<LeftRay>(c.sft, rng, past);
        const auto a2 = random_element<LeftRay>(c.sft, rng, past);
        const auto b1 = random_element<RightRay>(c.sft, rng, future);
        const auto b2 = random_element<RightRay>(c.sft, rng, future);
        if (!trace_property_check(c.sft, a1, a2, perron, 1e-10)) ++failures;
        if (!trace_property_check(c.sft, b1, b2, perron, 1e-10)) ++failures;
        checked += 2;
      }
    }
    r.measured = failures;
    r.tolerance = 0.0;
    r.passed = failures == 0;
    r.detail = std::to_string(checked) + " pairs, " + std::to_string(failures) + " failures";
  });
}

std::vector<CheckResult> run_acceptance_suite() {
  return {ac1_exact_regime(),       ac2_convergent_regime(),     ac3_off_diagonal_vanishing(),
          ac4_measure_identities(), ac5_oracle_equivalence(),    ac6_finite_rank_products(),
          ac7_perron(),             ac8_trace_property()};
}

// ------------------------------------------------------ per-config checks

std::vector<CheckResult> config_checks(const ExperimentConfig& config) {
  std::vector<CheckResult> out;
  std::optional<PerronData> perron;
  out.push_back(timed("config: Perron residual", 60.0, [&](CheckResult& r) {
    perron = compute_perron(config.sft, config.tolerances.perron);
    r.measured = perron->residual;
    r.tolerance = config.tolerances.perron;
    r.passed = perron->residual <= r.tolerance;
  }));
  if (!perron) return out;

  out.push_back(timed("config: leaf measure product identity", 60.0, [&](CheckResult& r) {
    const auto report = measure_identities(config.sft, LeafMeasures::standard(*perron), 8);
    r.measured = std::max(report.product, report.additivity);
    r.tolerance = 1e-10;
    r.passed = r.measured <= r.tolerance && report.total_mass <= 1e-12 && report.scaling <= 1e-12;
    r.detail = std::to_string(report.words) + " words";
  }));

  out.push_back(timed("config: exact trace vs brute force", 60.0, [&](CheckResult& r) {
    const int limit = std::max(config.window, 10);
    int compared = 0;
    for (int k = config.k_min; k <= std::min(config.k_max, config.k_min + 5); ++k) {
      const int window = oracle_window(config.a, config.b, k);
      if (window > limit) continue;
      const Complex exact = trace_product(config.sft, config.a, config.b, k).value.approximate();
      const Complex brute = trace_product_oracle(config.sft, config.P, config.Q, config.a, config.b, k, window);
      r.measured = std::max(r.measured, std::abs(exact - brute));
      ++compared;
    }
    r.tolerance = 0.0;
    r.passed = r.measured == 0.0;
    r.detail = std::to_string(compared) + " values of k compared";
  }));

  out.push_back(timed("config: final scaled trace error", 60.0, [&](CheckResult& r) {
    const std::vector<int> ks{config.k_max};
    const TraceReport report = scaled_trace_sequence(config.sft, *perron, config.a, config.b, ks, 1);
    r.measured = report.rows.back().abs_err;
    r.tolerance = config.tolerances.trace_abs_err;
    r.passed = r.measured <= r.tolerance;
    r.detail = "k = " + std::to_string(config.k_max);
  }));
  return out;
}

std::vector<double> divergence_surrogate(int terms, int k) {
  const Fixture f = full_two_shift();
  const auto& c = f.config;
  const PerronData perron = compute_perron(c.sft);
  const std::vector<Symbol> one{1};
  std::vector<double> out;
  std::vector<StableElement::Term> pieces;
  for (int i = 1; i <= terms; ++i) {
    const int window = -(i - 1);
    pieces.emplace_back(1.0, StableBisection::diagonal(
                                 LeftRay::periodic(Periodic::anchored(c.sft, one, window, 0), window)));
    const StableElement a = StableElement::reduce(c.sft, pieces);
    const std::vector<int> ks{k};
    out.push_back(scaled_trace_sequence(c.sft, perron, a, c.b, ks, 1).rows.front().scaled.real());
  }
  return out;
}

}  // namespace smale
