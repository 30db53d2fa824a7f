#include "smale/perron.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "smale/errors.hpp"

namespace smale {

namespace {

using Vec = std::vector<double>;

Vec right_multiply(const Sft& sft, const Vec& x) {
  Vec y(x.size(), 0.0);
  for (int i = 0; i < sft.size(); ++i)
    for (Symbol j : sft.successors(i)) y[i] += x[j];
  return y;
}

Vec left_multiply(const Sft& sft, const Vec& x) {
  Vec y(x.size(), 0.0);
  for (int j = 0; j < sft.size(); ++j)
    for (Symbol i : sft.predecessors(j)) y[j] += x[i];
  return y;
}

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

void scale_to_max_one(Vec& x) {
  double m = *std::max_element(x.begin(), x.end());
  for (double& e : x) e /= m;
}

double sup_residual(const Vec& image, const Vec& x, double lambda) {
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(image[i] - lambda * x[i]));
  return r;
}

// Final normalization: right has min entry 1, left . right = 1.
PerronData normalized(const Sft& sft, Vec right, Vec left, long iterations) {
  double m = *std::min_element(right.begin(), right.end());
  for (double& e : right) e /= m;
  double scale = dot(left, right);
  for (double& e : left) e /= scale;
  Vec image = right_multiply(sft, right);
  double lambda = dot(left, image);  // left . right == 1
  double residual = std::max(sup_residual(image, right, lambda), sup_residual(left_multiply(sft, left), left, lambda));
  return PerronData{lambda, std::move(right), std::move(left), residual, iterations};
}

}  // namespace

PerronData compute_perron(const Sft& sft, double tol, long max_iterations) {
  if (!is_mixing(sft)) throw NotPrimitive();
  const auto n = static_cast<std::size_t>(sft.size());
  Vec right(n, 1.0);
  Vec left(n, 1.0);
  for (long it = 1; it <= max_iterations; ++it) {
    right = right_multiply(sft, right);
    left = left_multiply(sft, left);
    scale_to_max_one(right);
    scale_to_max_one(left);
    PerronData candidate = normalized(sft, right, left, it);
    if (candidate.residual > tol) continue;
    // Converged; a few more steps usually shave the residual down to rounding.
    for (int extra = 0; extra < 64; ++extra) {
      right = right_multiply(sft, right);
      left = left_multiply(sft, left);
      scale_to_max_one(right);
      scale_to_max_one(left);
      PerronData next = normalized(sft, right, left, it + extra + 1);
      if (next.residual >= candidate.residual) break;
      candidate = std::move(next);
    }
    return candidate;
  }
  throw NoConvergence(max_iterations);
}

double entropy(const PerronData& perron) { return std::log(perron.lambda); }

double mu_bowen(const Sft& sft, const PerronData& perron, const Word& w) {
  if (w.empty()) return 1.0;
  if (!is_admissible(sft, w)) throw InadmissibleWord("cylinder word is not admissible");
  const auto span = static_cast<double>(w.symbols.size() - 1);
  return perron.left[w.symbols.front()] * perron.right[w.symbols.back()] * std::pow(perron.lambda, -span);
}

double LeafMeasures::unstable(Symbol terminal, int window) const {
  return kappa_u_ * std::pow(perron_.lambda, -static_cast<double>(window)) * perron_.right[terminal];
}

double LeafMeasures::stable(Symbol initial, int window) const {
  return kappa_s_ * std::pow(perron_.lambda, static_cast<double>(window)) * perron_.left[initial];
}

double LeafMeasures::mu_u(const LeftRay& ray) const { return unstable(ray.terminal(), ray.end()); }

double LeafMeasures::mu_s(const RightRay& ray) const { return stable(ray.initial(), ray.start()); }

double mu_u(const Sft& sft, const PerronData& perron, const LeftRay& ray) {
  if (!is_admissible(sft, ray)) throw InadmissibleRay("past ray is not admissible");
  return LeafMeasures::standard(perron).mu_u(ray);
}

double mu_s(const Sft& sft, const PerronData& perron, const RightRay& ray) {
  if (!is_admissible(sft, ray)) throw InadmissibleRay("future ray is not admissible");
  return LeafMeasures::standard(perron).mu_s(ray);
}

double cylinder_measure(const Sft& sft, const LeafMeasures& measures, const CylinderSpec& cylinder) {
  struct Visitor {
    const Sft& sft;
    const LeafMeasures& measures;
    double operator()(const Word& w) const { return mu_bowen(sft, measures.perron(), w); }
    double operator()(const LeftRay& r) const {
      if (!is_admissible(sft, r)) throw InadmissibleRay("past ray is not admissible");
      return measures.mu_u(r);
    }
    double operator()(const RightRay& r) const {
      if (!is_admissible(sft, r)) throw InadmissibleRay("future ray is not admissible");
      return measures.mu_s(r);
    }
  };
  return std::visit(Visitor{sft, measures}, cylinder);
}

}  // namespace smale
