#pragma once

// Built-in test shifts, the acceptance suite, and the command implementations
// behind the `smale` CLI.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smale/config.hpp"
#include "smale/perron.hpp"

namespace smale {

/// A shift with orbit sets, a canonical (a, b) pair and a few sample elements.
struct Fixture {
  std::string name;
  ExperimentConfig config;
  std::vector<StableElement> stable_samples;
  std::vector<UnstableElement> unstable_samples;
};

/// Full 2-shift, P = {0^inf}, Q = {1^inf}, a/b indicators of 1^inf past and
/// 0^inf future at window 0.
Fixture full_two_shift();
/// Golden mean shift [[1,1],[1,0]], P = Q = {0^inf}, all-zeros rays at 0.
Fixture golden_mean();
/// 3-symbol primitive shift [[1,1,0],[0,0,1],[1,0,1]], P = {0^inf},
/// Q = {2^inf, (012)^inf}.
Fixture three_symbol();
std::vector<Fixture> all_fixtures();

/// Golden mean off-diagonal element e(...000, ...010) at window 0.
StableElement golden_off_diagonal();

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct RunSummary {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  void print(std::ostream& out) const;
};

/// Leaf-measure identities on one shift: product structure of the Parry
/// measure, phi-scaling, additivity, total mass. Words up to `max_length`.
/// Returns the worst deviation found for each identity.
struct MeasureIdentityReport {
  double product = 0.0;
  double scaling = 0.0;
  double additivity = 0.0;
  double total_mass = 0.0;
  std::size_t words = 0;
};
MeasureIdentityReport measure_identities(const Sft& sft, const LeafMeasures& measures, int max_length);

CheckResult ac1_exact_regime();
CheckResult ac2_convergent_regime();
CheckResult ac3_off_diagonal_vanishing();
CheckResult ac4_measure_identities();
CheckResult ac5_oracle_equivalence();
CheckResult ac6_finite_rank_products();
CheckResult ac7_perron();
CheckResult ac8_trace_property();
std::vector<CheckResult> run_acceptance_suite();

/// Checks specific to one configuration (Perron residual, measure
/// identities, oracle agreement, final trace error).
std::vector<CheckResult> config_checks(const ExperimentConfig& config);

/// Scaled traces of the increasing family a_i = sum_{j<i} indicators with
/// tau_s(a_i) = 2^i - 1 on the full 2-shift: a positive element with
/// infinite trace seen through finite truncations.
std::vector<double> divergence_surrogate(int terms, int k);

// ------------------------------------------------------------- commands

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitNumerical = 3, kExitResource = 4 };

struct TraceRunOptions {
  std::optional<std::string> out;
  std::optional<int> kmax;
  bool timestamp = true;
  unsigned threads = 0;
};

void cmd_inspect(const ExperimentConfig& config, std::ostream& out);
void cmd_measures(const ExperimentConfig& config, std::ostream& out);
void cmd_enumerate(const ExperimentConfig& config, int window, std::ostream& out);
/// Writes the CSV (to options.out, else config.output, else `out`) and a
/// summary. Returns kExitNumerical when the final error misses tolerance.
int cmd_trace_run(const ExperimentConfig& config, const TraceRunOptions& options, std::ostream& out);
int cmd_theorem13(const ExperimentConfig& config, int n_max, std::ostream& out);
RunSummary cmd_verify(const ExperimentConfig& config, std::ostream& out);

}  // namespace smale
