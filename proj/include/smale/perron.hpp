#pragma once

// Perron-Frobenius data of a mixing shift, topological entropy, the Parry
// (maximal entropy) measure of cylinders, and the leaf measures on local
// unstable and stable sets.

#include <variant>
#include <vector>

#include "smale/points.hpp"
#include "smale/sft.hpp"

namespace smale {

/// Dominant eigen-data of the transition matrix.
///
/// `right` is normalized so its smallest entry is 1; `left` is then scaled so
/// that left . right = 1. `residual` bounds both eigen-equation residuals in
/// the sup norm.
struct PerronData {
  double lambda = 0.0;
  std::vector<double> right;
  std::vector<double> left;
  double residual = 0.0;
  long iterations = 0;
};

inline constexpr long kPerronIterationCap = 1'000'000;

/// Simultaneous left/right power iteration from the all-ones vector.
/// Throws NotPrimitive when the shift is not mixing and NoConvergence when
/// the residual cannot be pushed below `tol` within the iteration cap.
PerronData compute_perron(const Sft& sft, double tol = 1e-12, long max_iterations = kPerronIterationCap);

/// Topological entropy log(lambda).
double entropy(const PerronData& perron);

/// Parry measure of the cylinder fixing w's coordinates; 1 for the empty word.
/// Throws InadmissibleWord.
double mu_bowen(const Sft& sft, const PerronData& perron, const Word& w);

/// Leaf measures on unstable / stable cylinders.
///
/// mu_u(C^u(alpha, N)) = kappa_u * lambda^-N * right[alpha_{N-1}]
/// mu_s(C^s(beta, M))  = kappa_s * lambda^M  * left[beta_M]
///
/// Only kappa_u * kappa_s = lambda is forced by the product structure of the
/// Parry measure; the standard split is kappa_u = 1, kappa_s = lambda.
class LeafMeasures {
 public:
  static LeafMeasures standard(const PerronData& perron) {
    return LeafMeasures(perron, 1.0, perron.lambda);
  }
  LeafMeasures(PerronData perron, double kappa_u, double kappa_s)
      : perron_(std::move(perron)), kappa_u_(kappa_u), kappa_s_(kappa_s) {}

  const PerronData& perron() const { return perron_; }

  /// Measure of the past cylinder ending at `window` with terminal symbol.
  double unstable(Symbol terminal, int window) const;
  /// Measure of the future cylinder starting at `window` with initial symbol.
  double stable(Symbol initial, int window) const;

  double mu_u(const LeftRay& ray) const;
  double mu_s(const RightRay& ray) const;

 private:
  PerronData perron_;
  double kappa_u_;
  double kappa_s_;
};

/// Standard-normalization shorthands. Throw InadmissibleRay if the ray is
/// not admissible for `sft`.
double mu_u(const Sft& sft, const PerronData& perron, const LeftRay& ray);
double mu_s(const Sft& sft, const PerronData& perron, const RightRay& ray);

/// A Parry cylinder (word), a past cylinder C^u(ray, ray.end()) or a future
/// cylinder C^s(ray, ray.start()).
using CylinderSpec = std::variant<Word, LeftRay, RightRay>;

/// Dispatches to mu_bowen / mu_u / mu_s. Throws on inadmissible input.
double cylinder_measure(const Sft& sft, const LeafMeasures& measures, const CylinderSpec& cylinder);

}  // namespace smale
