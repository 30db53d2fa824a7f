#pragma once

// Eventually periodic points of a shift of finite type: periodic orbits,
// half-infinite rays with periodic tails, and the heteroclinic points whose
// past follows an orbit of Q and whose future follows an orbit of P.
//
// All indices are absolute. A periodic tail is stored as an orbit plus a
// shift so that its symbol at index n is cycle[(n + shift) mod period]; this
// makes equality of rays and points a plain comparison of canonical fields.

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "smale/sft.hpp"

namespace smale {

/// Floor modulo for possibly negative indices.
constexpr int floor_mod(long a, int m) {
  long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

/// A primitive cyclic word, stored as its lexicographically least rotation.
class Orbit {
 public:
  /// Validates (nonempty, symbols in range, admissible with the wrap
  /// transition, primitive) and normalizes. Throws InadmissibleWord.
  static Orbit from_cycle(const Sft& sft, std::span<const Symbol> cycle);

  /// Rotation r with normalized[i] == cycle[(i + r) mod period].
  static int normalizing_rotation(std::span<const Symbol> cycle);

  const std::vector<Symbol>& cycle() const { return cycle_; }
  int period() const { return static_cast<int>(cycle_.size()); }

  auto operator<=>(const Orbit&) const = default;

 private:
  explicit Orbit(std::vector<Symbol> cycle) : cycle_(std::move(cycle)) {}
  std::vector<Symbol> cycle_;
};

/// A finite phi-invariant set given as a list of distinct orbits.
class OrbitSet {
 public:
  OrbitSet() = default;
  /// Throws InadmissibleWord if two entries describe the same orbit.
  explicit OrbitSet(std::vector<Orbit> orbits);

  const std::vector<Orbit>& orbits() const { return orbits_; }
  bool contains(const Orbit& orbit) const;
  bool empty() const { return orbits_.empty(); }
  bool operator==(const OrbitSet&) const = default;

 private:
  std::vector<Orbit> orbits_;
};

bool disjoint(const OrbitSet& a, const OrbitSet& b);

/// The bi-infinite periodic sequence n -> cycle[(n + shift) mod period].
class Periodic {
 public:
  Periodic(Orbit orbit, int shift) : orbit_(std::move(orbit)), shift_(floor_mod(shift, orbit_.period())) {}

  /// Tail with x_{anchor + i} = cycle[(i + phase) mod period] for the cycle as
  /// given (not necessarily normalized).
  static Periodic anchored(const Sft& sft, std::span<const Symbol> cycle, int anchor, int phase);

  Symbol at(long n) const { return orbit_.cycle()[floor_mod(n + shift_, orbit_.period())]; }
  const Orbit& orbit() const { return orbit_; }
  int shift() const { return shift_; }
  /// Phase relative to `anchor`, inverse of anchored() for the normalized cycle.
  int phase_at(int anchor) const { return floor_mod(static_cast<long>(anchor) + shift_, orbit_.period()); }

  /// The sequence phi^n(x): (phi^n x)_m = x_{m+n}.
  Periodic shifted(int n) const { return Periodic(orbit_, shift_ + n); }

  auto operator<=>(const Periodic&) const = default;

 private:
  Orbit orbit_;
  int shift_;
};

/// Left-infinite sequence x_n, n < end(): periodic for n < start(), then body.
/// Canonical: start is maximal (the body never begins with the tail's symbol).
class LeftRay {
 public:
  static constexpr int kGrowthDirection = +1;

  LeftRay(Periodic tail, int start, std::vector<Symbol> body);
  /// Purely periodic ray ending at `end`.
  static LeftRay periodic(Periodic tail, int end) { return LeftRay(std::move(tail), end, {}); }

  const Periodic& tail() const { return tail_; }
  int start() const { return start_; }
  int end() const { return start_ + static_cast<int>(body_.size()); }
  const std::vector<Symbol>& body() const { return body_; }

  Symbol at(long n) const;
  Symbol terminal() const { return at(end() - 1); }

  int window() const { return end(); }
  Symbol junction() const { return terminal(); }
  /// Extends the ray by one coordinate at index end().
  LeftRay grown(Symbol s) const;
  /// Restriction to indices < new_end (requires new_end <= end()).
  LeftRay truncated(int new_end) const;
  LeftRay shifted(int n) const;
  static std::span<const Symbol> growth_symbols(const Sft& sft, Symbol junction) {
    return sft.successors(junction);
  }

  auto operator<=>(const LeftRay&) const = default;

 private:
  Periodic tail_;
  int start_;
  std::vector<Symbol> body_;
};

/// Right-infinite sequence x_n, n >= start(): body, then periodic from end().
/// Canonical: end is minimal (the body never ends with the tail's symbol).
class RightRay {
 public:
  static constexpr int kGrowthDirection = -1;

  RightRay(int start, std::vector<Symbol> body, Periodic tail);
  static RightRay periodic(Periodic tail, int start) { return RightRay(start, {}, std::move(tail)); }

  const Periodic& tail() const { return tail_; }
  int start() const { return start_; }
  int end() const { return start_ + static_cast<int>(body_.size()); }
  const std::vector<Symbol>& body() const { return body_; }

  Symbol at(long n) const;
  Symbol initial() const { return at(start_); }

  int window() const { return start_; }
  Symbol junction() const { return initial(); }
  /// Extends the ray by one coordinate at index start() - 1.
  RightRay grown(Symbol s) const;
  /// Restriction to indices >= new_start (requires new_start >= start()).
  RightRay truncated(int new_start) const;
  RightRay shifted(int n) const;
  static std::span<const Symbol> growth_symbols(const Sft& sft, Symbol junction) {
    return sft.predecessors(junction);
  }

  auto operator<=>(const RightRay&) const = default;

 private:
  int start_;
  std::vector<Symbol> body_;
  Periodic tail_;
};

bool is_admissible(const Sft& sft, const LeftRay& ray);
bool is_admissible(const Sft& sft, const RightRay& ray);

/// An eventually periodic bi-infinite sequence: past tail for n < begin,
/// explicit middle on [begin, end), future tail for n >= end.
///
/// Canonical form: begin is the first index where the point leaves its past
/// tail, end is one past the last index where it differs from its future
/// tail. When those overlap (the tails agree on a stretch around the splice)
/// the window is empty and sits at the admissible splice closest to 0; a
/// globally periodic point has the empty window [0, 0).
class HeteroclinicPoint {
 public:
  HeteroclinicPoint(Periodic past, int begin, std::vector<Symbol> middle, Periodic future);

  /// Joins a ray ending at N with a ray starting at N. No admissibility check.
  static HeteroclinicPoint splice(const LeftRay& past, const RightRay& future);
  /// Admissible splice or nullopt if the junction transition is forbidden.
  static std::optional<HeteroclinicPoint> try_splice(const Sft& sft, const LeftRay& past,
                                                     const RightRay& future);

  Symbol at(long n) const;
  const Periodic& past() const { return past_; }
  const Periodic& future() const { return future_; }
  int window_begin() const { return begin_; }
  int window_end() const { return begin_ + static_cast<int>(middle_.size()); }
  const std::vector<Symbol>& middle() const { return middle_; }

  /// The canonical ray of coordinates < end.
  LeftRay past_ray(int end) const;
  /// The canonical ray of coordinates >= start.
  RightRay future_ray(int start) const;

  auto operator<=>(const HeteroclinicPoint&) const = default;

 private:
  Periodic past_;
  int begin_;
  std::vector<Symbol> middle_;
  Periodic future_;
};

bool is_admissible(const Sft& sft, const HeteroclinicPoint& z);

/// phi^n(z), (phi z)_m = z_{m+1}.
HeteroclinicPoint shift_point(const HeteroclinicPoint& z, int n);

/// [x, y]: past (n <= 0) from y, future (n >= 0) from x. Throws
/// IncompatibleAtZero unless x_0 == y_0.
HeteroclinicPoint bracket(const HeteroclinicPoint& x, const HeteroclinicPoint& y);

/// All points of X^h(P,Q) whose canonical window lies inside [-window, window],
/// sorted and duplicate free.
std::vector<HeteroclinicPoint> enumerate_heteroclinic(const Sft& sft, const OrbitSet& P, const OrbitSet& Q,
                                                      int window);

/// The past follows an orbit of Q.
bool in_unstable_class(const HeteroclinicPoint& z, const OrbitSet& Q);
/// The future follows an orbit of P.
bool in_stable_class(const HeteroclinicPoint& z, const OrbitSet& P);

/// A shortest cycle through `s` read as a primitive orbit; used to give
/// words a periodic past or future.
Orbit orbit_through(const Sft& sft, Symbol s);

/// Past ray ending at w.end() whose last coordinates are w, preceded by the
/// periodic orbit_through(w's first symbol). Throws InadmissibleWord.
LeftRay past_through(const Sft& sft, const Word& w);
/// Future ray starting at w.start with w followed by orbit_through(w's last symbol).
RightRay future_through(const Sft& sft, const Word& w);

}  // namespace smale
