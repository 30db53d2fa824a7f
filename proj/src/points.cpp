#include "smale/points.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "smale/errors.hpp"

namespace smale {

// ---------------------------------------------------------------- orbits

int Orbit::normalizing_rotation(std::span<const Symbol> cycle) {
  const int p = static_cast<int>(cycle.size());
  int best = 0;
  for (int r = 1; r < p; ++r) {
    for (int i = 0; i < p; ++i) {
      Symbol a = cycle[(r + i) % p];
      Symbol b = cycle[(best + i) % p];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  return best;
}

Orbit Orbit::from_cycle(const Sft& sft, std::span<const Symbol> cycle) {
  const int p = static_cast<int>(cycle.size());
  if (p == 0) throw InadmissibleWord("periodic orbit must be a nonempty cyclic word");
  for (Symbol s : cycle)
    if (s < 0 || s >= sft.size()) throw InadmissibleWord("orbit symbol out of range");
  for (int i = 0; i < p; ++i) {
    if (!sft.allowed(cycle[i], cycle[(i + 1) % p])) {
      throw InadmissibleWord("cyclic word contains a forbidden transition " + sft.label(cycle[i]) + "->" +
                             sft.label(cycle[(i + 1) % p]));
    }
  }
  for (int d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool repeats = true;
    for (int i = d; i < p && repeats; ++i) repeats = cycle[i] == cycle[i - d];
    if (repeats) throw InadmissibleWord("cyclic word is not primitive (it repeats with period " +
                                        std::to_string(d) + ")");
  }
  int r = normalizing_rotation(cycle);
  std::vector<Symbol> normalized(p);
  for (int i = 0; i < p; ++i) normalized[i] = cycle[(i + r) % p];
  return Orbit(std::move(normalized));
}

OrbitSet::OrbitSet(std::vector<Orbit> orbits) : orbits_(std::move(orbits)) {
  std::vector<Orbit> sorted = orbits_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InadmissibleWord("orbit set lists the same periodic orbit twice");
  }
}

bool OrbitSet::contains(const Orbit& orbit) const {
  return std::find(orbits_.begin(), orbits_.end(), orbit) != orbits_.end();
}

bool disjoint(const OrbitSet& a, const OrbitSet& b) {
  return std::none_of(a.orbits().begin(), a.orbits().end(), [&](const Orbit& o) { return b.contains(o); });
}

Periodic Periodic::anchored(const Sft& sft, std::span<const Symbol> cycle, int anchor, int phase) {
  Orbit orbit = Orbit::from_cycle(sft, cycle);
  // normalized[i] = cycle[i + r]; want x_{anchor+i} = cycle[i + phase] = normalized[i + phase - r].
  int r = Orbit::normalizing_rotation(cycle);
  return Periodic(std::move(orbit), phase - r - anchor);
}

Orbit orbit_through(const Sft& sft, Symbol s) {
  const int n = sft.size();
  std::vector<int> parent(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<Symbol> frontier;
  for (Symbol t : sft.successors(s)) {
    if (t == s) return Orbit::from_cycle(sft, std::vector<Symbol>{s});
    if (!seen[t]) {
      seen[t] = true;
      parent[t] = s;
      frontier.push(t);
    }
  }
  while (!frontier.empty()) {
    Symbol t = frontier.front();
    frontier.pop();
    for (Symbol next : sft.successors(t)) {
      if (next == s) {
        std::vector<Symbol> path;
        for (Symbol cur = t; cur != s; cur = parent[cur]) path.push_back(cur);
        path.push_back(s);
        std::reverse(path.begin(), path.end());
        return Orbit::from_cycle(sft, path);
      }
      if (!seen[next]) {
        seen[next] = true;
        parent[next] = t;
        frontier.push(next);
      }
    }
  }
  throw InadmissibleWord("symbol " + sft.label(s) + " lies on no cycle");
}

namespace {

int position_in(const Orbit& orbit, Symbol s) {
  const auto& c = orbit.cycle();
  return static_cast<int>(std::find(c.begin(), c.end(), s) - c.begin());
}

}  // namespace

LeftRay past_through(const Sft& sft, const Word& w) {
  if (w.empty() || !is_admissible(sft, w)) throw InadmissibleWord("word must be nonempty and admissible");
  Orbit orbit = orbit_through(sft, w.symbols.front());
  const int phase = position_in(orbit, w.symbols.front());
  Periodic tail = Periodic::anchored(sft, orbit.cycle(), w.start, phase);
  return LeftRay(std::move(tail), w.start, w.symbols);
}

RightRay future_through(const Sft& sft, const Word& w) {
  if (w.empty() || !is_admissible(sft, w)) throw InadmissibleWord("word must be nonempty and admissible");
  Orbit orbit = orbit_through(sft, w.symbols.back());
  const int phase = position_in(orbit, w.symbols.back());
  Periodic tail = Periodic::anchored(sft, orbit.cycle(), w.end() - 1, phase);
  return RightRay(w.start, w.symbols, std::move(tail));
}

// ------------------------------------------------------------------ rays

LeftRay::LeftRay(Periodic tail, int start, std::vector<Symbol> body)
    : tail_(std::move(tail)), start_(start), body_(std::move(body)) {
  std::size_t strip = 0;
  while (strip < body_.size() && body_[strip] == tail_.at(start_ + static_cast<long>(strip))) ++strip;
  body_.erase(body_.begin(), body_.begin() + static_cast<long>(strip));
  start_ += static_cast<int>(strip);
}

Symbol LeftRay::at(long n) const { return n < start_ ? tail_.at(n) : body_[n - start_]; }

LeftRay LeftRay::grown(Symbol s) const {
  std::vector<Symbol> body = body_;
  body.push_back(s);
  return LeftRay(tail_, start_, std::move(body));
}

LeftRay LeftRay::truncated(int new_end) const {
  if (new_end <= start_) return LeftRay(tail_, new_end, {});
  return LeftRay(tail_, start_, std::vector<Symbol>(body_.begin(), body_.begin() + (new_end - start_)));
}

LeftRay LeftRay::shifted(int n) const { return LeftRay(tail_.shifted(n), start_ - n, body_); }

RightRay::RightRay(int start, std::vector<Symbol> body, Periodic tail)
    : start_(start), body_(std::move(body)), tail_(std::move(tail)) {
  while (!body_.empty() && body_.back() == tail_.at(end() - 1)) body_.pop_back();
}

Symbol RightRay::at(long n) const { return n >= end() ? tail_.at(n) : body_[n - start_]; }

RightRay RightRay::grown(Symbol s) const {
  std::vector<Symbol> body;
  body.reserve(body_.size() + 1);
  body.push_back(s);
  body.insert(body.end(), body_.begin(), body_.end());
  return RightRay(start_ - 1, std::move(body), tail_);
}

RightRay RightRay::truncated(int new_start) const {
  if (new_start >= end()) return RightRay(new_start, {}, tail_);
  return RightRay(new_start, std::vector<Symbol>(body_.begin() + (new_start - start_), body_.end()), tail_);
}

RightRay RightRay::shifted(int n) const { return RightRay(start_ - n, body_, tail_.shifted(n)); }

bool is_admissible(const Sft& sft, const LeftRay& ray) {
  if (!is_admissible(sft, ray.body())) return false;
  return ray.body().empty() || sft.allowed(ray.tail().at(ray.start() - 1), ray.body().front());
}

bool is_admissible(const Sft& sft, const RightRay& ray) {
  if (!is_admissible(sft, ray.body())) return false;
  return ray.body().empty() || sft.allowed(ray.body().back(), ray.tail().at(ray.end()));
}

// ---------------------------------------------------------------- points

namespace {

constexpr long kUnbounded = std::numeric_limits<int>::max();

}  // namespace

HeteroclinicPoint::HeteroclinicPoint(Periodic past, int begin, std::vector<Symbol> middle, Periodic future)
    : past_(std::move(past)), begin_(begin), middle_(std::move(middle)), future_(std::move(future)) {
  const long first = begin_;
  const long last = window_end();
  const int period = std::lcm(past_.orbit().period(), future_.orbit().period());

  // First index where the point leaves its past tail.
  long leave_past = kUnbounded;
  for (long n = first; n < last + period; ++n) {
    if (at(n) != past_.at(n)) {
      leave_past = n;
      break;
    }
  }
  // One past the last index where the point differs from its future tail.
  long join_future = -kUnbounded;
  for (long n = last - 1; n >= first - period; --n) {
    if (at(n) != future_.at(n)) {
      join_future = n + 1;
      break;
    }
  }

  std::vector<Symbol> window;
  long new_begin = 0;
  if (leave_past == kUnbounded) {
    new_begin = 0;  // globally periodic
  } else if (leave_past <= join_future) {
    new_begin = leave_past;
    for (long n = leave_past; n < join_future; ++n) window.push_back(at(n));
  } else {
    new_begin = std::clamp<long>(0, join_future, leave_past);
  }
  begin_ = static_cast<int>(new_begin);
  middle_ = std::move(window);
}

HeteroclinicPoint HeteroclinicPoint::splice(const LeftRay& past, const RightRay& future) {
  std::vector<Symbol> middle = past.body();
  middle.insert(middle.end(), future.body().begin(), future.body().end());
  return HeteroclinicPoint(past.tail(), past.start(), std::move(middle), future.tail());
}

std::optional<HeteroclinicPoint> HeteroclinicPoint::try_splice(const Sft& sft, const LeftRay& past,
                                                               const RightRay& future) {
  if (past.end() != future.start() || !sft.allowed(past.terminal(), future.initial())) return std::nullopt;
  return splice(past, future);
}

Symbol HeteroclinicPoint::at(long n) const {
  if (n < begin_) return past_.at(n);
  if (n < window_end()) return middle_[n - begin_];
  return future_.at(n);
}

LeftRay HeteroclinicPoint::past_ray(int end) const {
  if (end <= begin_) return LeftRay(past_, end, {});
  std::vector<Symbol> body;
  body.reserve(end - begin_);
  for (long n = begin_; n < end; ++n) body.push_back(at(n));
  return LeftRay(past_, begin_, std::move(body));
}

RightRay HeteroclinicPoint::future_ray(int start) const {
  const int stop = window_end();
  if (start >= stop) return RightRay(start, {}, future_);
  std::vector<Symbol> body;
  body.reserve(stop - start);
  for (long n = start; n < stop; ++n) body.push_back(at(n));
  return RightRay(start, std::move(body), future_);
}

bool is_admissible(const Sft& sft, const HeteroclinicPoint& z) {
  const long first = z.window_begin() - 1;
  const long last = z.window_end();
  for (long n = first; n < last; ++n)
    if (!sft.allowed(z.at(n), z.at(n + 1))) return false;
  // Tails are admissible cycles; the window edges are covered above.
  return true;
}

HeteroclinicPoint shift_point(const HeteroclinicPoint& z, int n) {
  return HeteroclinicPoint(z.past().shifted(n), z.window_begin() - n, z.middle(), z.future().shifted(n));
}

HeteroclinicPoint bracket(const HeteroclinicPoint& x, const HeteroclinicPoint& y) {
  if (x.at(0) != y.at(0)) throw IncompatibleAtZero();
  return HeteroclinicPoint::splice(y.past_ray(1), x.future_ray(1));
}

namespace {

void extend_words(const Sft& sft, const Periodic& past, const Periodic& future, int window,
                  std::vector<Symbol>& word, std::set<HeteroclinicPoint>& out) {
  const int length = 2 * window;
  const Symbol previous = word.empty() ? past.at(-window - 1) : word.back();
  if (static_cast<int>(word.size()) == length) {
    if (sft.allowed(previous, future.at(window))) out.emplace(past, -window, word, future);
    return;
  }
  for (Symbol s : sft.successors(previous)) {
    word.push_back(s);
    extend_words(sft, past, future, window, word, out);
    word.pop_back();
  }
}

}  // namespace

std::vector<HeteroclinicPoint> enumerate_heteroclinic(const Sft& sft, const OrbitSet& P, const OrbitSet& Q,
                                                      int window) {
  std::set<HeteroclinicPoint> points;
  std::vector<Symbol> word;
  for (const Orbit& q : Q.orbits()) {
    for (int a = 0; a < q.period(); ++a) {
      Periodic past(q, a);
      for (const Orbit& p : P.orbits()) {
        for (int b = 0; b < p.period(); ++b) {
          extend_words(sft, past, Periodic(p, b), window, word, points);
        }
      }
    }
  }
  return {points.begin(), points.end()};
}

bool in_unstable_class(const HeteroclinicPoint& z, const OrbitSet& Q) { return Q.contains(z.past().orbit()); }

bool in_stable_class(const HeteroclinicPoint& z, const OrbitSet& P) { return P.contains(z.future().orbit()); }

}  // namespace smale
