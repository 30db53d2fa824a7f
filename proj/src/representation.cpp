#include "smale/representation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <Eigen/Dense>

#include "smale/errors.hpp"

namespace smale {

std::optional<HeteroclinicPoint> apply_bisection(const StableBisection& e, const HeteroclinicPoint& w) {
  const int window = e.window();
  if (w.past_ray(window) != e.source) return std::nullopt;
  return HeteroclinicPoint::splice(e.target, w.future_ray(window));
}

std::optional<HeteroclinicPoint> apply_bisection(const UnstableBisection& e, const HeteroclinicPoint& w) {
  const int window = e.window();
  if (w.future_ray(window) != e.source) return std::nullopt;
  return HeteroclinicPoint::splice(w.past_ray(window), e.target);
}

// -------------------------------------------------------- finite operators

void FiniteOperator::add(const HeteroclinicPoint& row, const HeteroclinicPoint& col, Complex value) {
  auto [it, inserted] = entries_.try_emplace(Key{row, col}, value);
  if (!inserted) it->second += value;
  if (it->second == Complex(0.0)) entries_.erase(it);
}

FiniteOperator& FiniteOperator::operator+=(const FiniteOperator& rhs) {
  for (const auto& [key, value] : rhs.entries_) add(key.first, key.second, value);
  return *this;
}

FiniteOperator FiniteOperator::operator-(const FiniteOperator& rhs) const {
  FiniteOperator out = *this;
  out += rhs.scaled(-1.0);
  return out;
}

FiniteOperator FiniteOperator::scaled(Complex c) const {
  FiniteOperator out;
  for (const auto& [key, value] : entries_) out.add(key.first, key.second, value * c);
  return out;
}

namespace {

void fill_words(const Sft& sft, Symbol from, Symbol to, int length, std::vector<Symbol>& word,
                std::vector<std::vector<Symbol>>& out) {
  const Symbol previous = word.empty() ? from : word.back();
  if (static_cast<int>(word.size()) == length) {
    if (sft.allowed(previous, to)) out.push_back(word);
    return;
  }
  for (Symbol s : sft.successors(previous)) {
    word.push_back(s);
    fill_words(sft, from, to, length, word, out);
    word.pop_back();
  }
}

// Every basis point that can lie in the source of a product of a term with
// source `past` (window N) and a term with source `future` (window M), in
// either order.
void product_candidates(const Sft& sft, const LeftRay& past, const RightRay& future, int window_cap,
                        std::set<HeteroclinicPoint>& out) {
  const int n = past.end();
  const int m = future.start();
  if (n <= m) {
    if (m - n > window_cap) throw WindowOverflow(m - n, window_cap);
    std::vector<std::vector<Symbol>> fills;
    std::vector<Symbol> word;
    fill_words(sft, past.terminal(), future.initial(), m - n, word, fills);
    for (const auto& fill : fills) {
      std::vector<Symbol> middle = past.body();
      middle.insert(middle.end(), fill.begin(), fill.end());
      middle.insert(middle.end(), future.body().begin(), future.body().end());
      out.emplace(past.tail(), past.start(), std::move(middle), future.tail());
    }
    return;
  }
  if (auto w = HeteroclinicPoint::try_splice(sft, past.truncated(m), future)) out.insert(*w);
  if (auto w = HeteroclinicPoint::try_splice(sft, past, future.truncated(n))) out.insert(*w);
}

std::set<HeteroclinicPoint> all_candidates(const Sft& sft, const StableElement& a, const UnstableElement& b,
                                           int window_cap) {
  std::set<HeteroclinicPoint> out;
  for (const auto& [e, c] : a.terms())
    for (const auto& [f, d] : b.terms()) product_candidates(sft, e.source, f.source, window_cap, out);
  return out;
}

}  // namespace

FiniteOperator product_operator(const Sft& sft, const StableElement& a, const UnstableElement& b,
                                int window_cap) {
  FiniteOperator op;
  for (const auto& w : all_candidates(sft, a, b, window_cap))
    for (const auto& [z, c] : apply_element(a, apply_element(b, w))) op.add(z, w, c);
  return op;
}

FiniteOperator product_operator(const Sft& sft, const UnstableElement& b, const StableElement& a,
                                int window_cap) {
  FiniteOperator op;
  for (const auto& w : all_candidates(sft, a, b, window_cap))
    for (const auto& [z, c] : apply_element(b, apply_element(a, w))) op.add(z, w, c);
  return op;
}

std::vector<double> singular_values(const FiniteOperator& op) {
  if (op.is_zero()) return {};
  std::map<HeteroclinicPoint, Eigen::Index> rows;
  std::map<HeteroclinicPoint, Eigen::Index> cols;
  for (const auto& [key, value] : op.entries()) {
    rows.try_emplace(key.first, 0);
    cols.try_emplace(key.second, 0);
  }
  Eigen::Index next = 0;
  for (auto& [p, i] : rows) i = next++;
  next = 0;
  for (auto& [p, j] : cols) j = next++;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                              static_cast<Eigen::Index>(cols.size()));
  for (const auto& [key, value] : op.entries()) m(rows[key.first], cols[key.second]) = value;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

double operator_norm(const FiniteOperator& op) {
  auto s = singular_values(op);
  return s.empty() ? 0.0 : s.front();
}

int operator_rank(const FiniteOperator& op, double tol) {
  auto s = singular_values(op);
  return static_cast<int>(std::count_if(s.begin(), s.end(), [tol](double x) { return x > tol; }));
}

// ------------------------------------------------------------ exact trace

void ExactTrace::add(Complex coefficient, const mpz_class& count) {
  if (coefficient == Complex(0.0) || count == 0) return;
  terms_.emplace_back(coefficient, count);
}

bool ExactTrace::is_zero() const {
  if (auto exact = gaussian_integer()) return exact->first == 0 && exact->second == 0;
  return approximate() == Complex(0.0);
}

std::optional<std::pair<mpz_class, mpz_class>> ExactTrace::gaussian_integer() const {
  mpz_class re = 0;
  mpz_class im = 0;
  for (const auto& [c, count] : terms_) {
    if (c.real() != std::trunc(c.real()) || c.imag() != std::trunc(c.imag())) return std::nullopt;
    re += mpz_class(c.real()) * count;
    im += mpz_class(c.imag()) * count;
  }
  return std::make_pair(re, im);
}

Complex ExactTrace::scaled(double log_divisor) const {
  std::complex<long double> total = 0.0L;
  for (const auto& [c, count] : terms_) {
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, count.get_mpz_t());
    const long double magnitude =
        static_cast<long double>(mantissa) *
        std::exp(static_cast<long double>(exponent) * std::log(2.0L) - static_cast<long double>(log_divisor));
    total += std::complex<long double>(c.real(), c.imag()) * magnitude;
  }
  return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

}  // namespace

std::string ExactTrace::str() const {
  if (auto exact = gaussian_integer()) {
    if (exact->second == 0) return exact->first.get_str();
    return exact->first.get_str() + (exact->second < 0 ? "" : "+") + exact->second.get_str() + "i";
  }
  return format_complex(approximate());
}

TraceResult trace_product(const Sft& sft, const StableElement& a, const UnstableElement& b, int k) {
  const StableElement ak = apply_alpha(a, k);
  const UnstableElement bk = apply_alpha(b, -k);
  TraceResult result;
  // (terminal symbol, initial symbol, path length) -> summed coefficient
  std::map<std::tuple<Symbol, Symbol, long>, Complex> weighted;
  for (const auto& [e, c] : ak.terms()) {
    for (const auto& [f, d] : bk.terms()) {
      const bool diagonal = e.is_diagonal() && f.is_diagonal();
      if (!diagonal) ++result.off_diagonal_pairs;
      const int n = e.window();
      const int m = f.window();
      if (n <= m) {
        // Disjoint constraints: a fixed point needs both factors diagonal,
        // and then any admissible fill of [n, m) works.
        if (diagonal) weighted[{e.source.terminal(), f.source.initial(), m - n + 1}] += c * d;
        continue;
      }
      // Overlap: w < n must equal e.target and w >= m must equal f.source.
      auto candidate = HeteroclinicPoint::try_splice(sft, e.target.truncated(m), f.source);
      if (!candidate) continue;
      auto moved = apply_bisection(f, *candidate);
      if (!moved) continue;
      auto back = apply_bisection(e, *moved);
      if (!back || *back != *candidate) continue;
      if (!diagonal) ++result.off_diagonal_fixed_points;
      weighted[{0, 0, 0}] += c * d;  // one fixed point; (trans^0)[0][0] == 1
    }
  }
  std::map<long, CountMatrix> powers;
  for (const auto& [key, coeff] : weighted) {
    const auto& [from, to, length] = key;
    auto it = powers.find(length);
    if (it == powers.end()) it = powers.emplace(length, transition_power(sft, length)).first;
    result.value.add(coeff, it->second.at(from, to));
  }
  return result;
}

int oracle_window(const StableElement& a, const UnstableElement& b, int k) {
  int lo = 0;
  int hi = 0;
  const StableElement shifted_a = apply_alpha(a, k);
  const UnstableElement shifted_b = apply_alpha(b, -k);
  for (const auto& [e, c] : shifted_a.terms()) {
    lo = std::min({lo, e.target.start(), e.source.start()});
    hi = std::max(hi, e.window());
  }
  for (const auto& [f, d] : shifted_b.terms()) {
    lo = std::min(lo, f.window());
    hi = std::max({hi, f.target.end(), f.source.end()});
  }
  return std::max(-lo, hi);
}

Complex trace_product_oracle(const Sft& sft, const OrbitSet& P, const OrbitSet& Q, const StableElement& a,
                             const UnstableElement& b, int k, int window) {
  const int required = oracle_window(a, b, k);
  if (required > window) throw WindowTooSmall(required, window);
  const StableElement ak = apply_alpha(a, k);
  const UnstableElement bk = apply_alpha(b, -k);
  Complex total = 0.0;
  for (const auto& w : enumerate_heteroclinic(sft, P, Q, window)) {
    StateVector image = apply_element(ak, apply_element(bk, w));
    if (auto it = image.find(w); it != image.end()) total += it->second;
  }
  return total;
}

TraceReport scaled_trace_sequence(const Sft& sft, const PerronData& perron, const StableElement& a,
                                  const UnstableElement& b, std::span<const int> ks, unsigned threads) {
  TraceReport report;
  report.target = tau_s(a, perron) * tau_u(b, perron);
  std::vector<int> sorted(ks.begin(), ks.end());
  std::sort(sorted.begin(), sorted.end());
  report.rows.resize(sorted.size());
  const double log_lambda = std::log(perron.lambda);

  auto evaluate = [&](std::size_t i) {
    TraceRow& row = report.rows[i];
    row.k = sorted[i];
    row.trace = trace_product(sft, a, b, row.k).value;
    row.scaled = row.trace.scaled(2.0 * row.k * log_lambda);
    row.target = report.target;
    row.abs_err = std::abs(row.scaled - row.target);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(sorted.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < sorted.size(); ++i) evaluate(i);
    return report;
  }
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < sorted.size(); i += threads) evaluate(i);
    }));
  }
  for (auto& w : workers) w.get();
  return report;
}

std::string to_csv(const TraceReport& report) {
  std::ostringstream out;
  out << "k,trace,scaled,target,abs_err\n";
  for (const auto& row : report.rows) {
    out << row.k << ',' << row.trace.str() << ',' << format_complex(row.scaled) << ','
        << format_complex(row.target) << ',' << format_double(row.abs_err) << '\n';
  }
  return out.str();
}

VanishingReport vanishing_product_check(const Sft& sft, const OrbitSet& P, const OrbitSet& Q,
                                        const StableElement& a, const UnstableElement& b, int n_max,
                                        int window_cap) {
  if (!disjoint(P, Q)) throw OrbitsNotDisjoint();
  VanishingReport report;
  for (int n = 0; n <= n_max; ++n) {
    const StableElement shifted = apply_alpha(a, -n);
    report.n.push_back(n);
    report.norm_ab.push_back(operator_norm(product_operator(sft, shifted, b, window_cap)));
    report.norm_ba.push_back(operator_norm(product_operator(sft, b, shifted, window_cap)));
  }
  for (int i = static_cast<int>(report.n.size()) - 1; i >= 0; --i) {
    if (report.norm_ab[i] != 0.0 || report.norm_ba[i] != 0.0) break;
    report.vanishes_from = report.n[i];
  }
  return report;
}

FiniteOperator commutator(const Sft& sft, const StableElement& a, const UnstableElement& b, int n,
                          int window_cap) {
  const StableElement an = apply_alpha(a, n);
  const UnstableElement bn = apply_alpha(b, -n);
  FiniteOperator total;
  for (const auto& [e, c] : an.terms()) {
    for (const auto& [f, d] : bn.terms()) {
      // Decoupled windows: the two replacements touch disjoint coordinates
      // and commute exactly.
      if (e.window() <= f.window()) continue;
      const auto ea = StableElement::single(e, c);
      const auto fb = UnstableElement::single(f, d);
      total += product_operator(sft, ea, fb, window_cap) - product_operator(sft, fb, ea, window_cap);
    }
  }
  return total;
}

std::vector<std::pair<int, double>> commutator_decay(const Sft& sft, const StableElement& a,
                                                     const UnstableElement& b, std::span<const int> ns,
                                                     int window_cap) {
  std::vector<std::pair<int, double>> out;
  for (int n : ns) out.emplace_back(n, operator_norm(commutator(sft, a, b, n, window_cap)));
  return out;
}

}  // namespace smale
