#include "smale/algebra.hpp"

namespace smale {

Complex tau_s(const StableElement& a, const LeafMeasures& measures) {
  Complex total = 0.0;
  for (const auto& [e, c] : a.terms())
    if (e.is_diagonal()) total += c * measures.mu_u(e.source);
  return total;
}

Complex tau_u(const UnstableElement& b, const LeafMeasures& measures) {
  Complex total = 0.0;
  for (const auto& [e, c] : b.terms())
    if (e.is_diagonal()) total += c * measures.mu_s(e.source);
  return total;
}

Complex tau_s(const StableElement& a, const PerronData& perron) {
  return tau_s(a, LeafMeasures::standard(perron));
}

Complex tau_u(const UnstableElement& b, const PerronData& perron) {
  return tau_u(b, LeafMeasures::standard(perron));
}

}  // namespace smale
