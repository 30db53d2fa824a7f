#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "smale/errors.hpp"
#include "smale/experiments.hpp"
#include "smale/representation.hpp"

namespace smale {

namespace {

std::string num(double x, const char* pattern = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string num(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

std::string vec(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out + ")";
}

std::string cycle_str(const Sft& sft, const Orbit& orbit) {
  std::string out;
  for (Symbol s : orbit.cycle()) out += sft.label(s);
  return out;
}

// Coordinates -window..window-1 with a '.' before index 0, and the tails.
std::string point_str(const Sft& sft, const HeteroclinicPoint& z, int window) {
  std::string out = "(" + cycle_str(sft, z.past().orbit()) + ")~ ";
  for (int n = -window; n < window; ++n) {
    if (n == 0) out += '.';
    out += sft.label(z.at(n));
  }
  return out + " ~(" + cycle_str(sft, z.future().orbit()) + ")";
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

// Least squares slope of log(abs_err) against k over rows whose error is
// above the double rounding floor.
std::optional<double> fitted_decay(const TraceReport& report) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : report.rows)
    if (row.abs_err > 1e-13) pts.emplace_back(row.k, std::log(row.abs_err));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  if (sxx == 0.0) return std::nullopt;
  return std::exp(sxy / sxx);
}

}  // namespace

void cmd_inspect(const ExperimentConfig& config, std::ostream& out) {
  const Sft& sft = config.sft;
  const PerronData perron = compute_perron(sft, config.tolerances.perron);
  out << "symbols      ";
  for (const auto& l : sft.labels()) out << ' ' << l;
  out << "\nmatrix\n";
  for (Symbol i = 0; i < sft.size(); ++i) {
    out << "  ";
    for (Symbol j = 0; j < sft.size(); ++j) out << ' ' << (sft.allowed(i, j) ? 1 : 0);
    out << '\n';
  }
  out << "mixing        yes\n";
  out << "lambda        " << num(perron.lambda, "%.15g") << '\n';
  out << "entropy       " << num(entropy(perron), "%.15g") << '\n';
  out << "right (v)     " << vec(perron.right) << '\n';
  out << "left (u)      " << vec(perron.left) << '\n';
  out << "residual      " << num(perron.residual, "%.3e") << " after " << perron.iterations << " iterations\n";
  out << "Parry measure of 1-cylinders\n";
  for (Symbol s = 0; s < sft.size(); ++s)
    out << "  [" << sft.label(s) << "]  " << num(mu_bowen(sft, perron, Word{0, {s}})) << '\n';
}

void cmd_measures(const ExperimentConfig& config, std::ostream& out) {
  const PerronData perron = compute_perron(config.sft, config.tolerances.perron);
  const LeafMeasures measures = LeafMeasures::standard(perron);
  out << "unstable leaf measure  mu_u(past ending at N) = lambda^-N v[terminal]\n";
  out << "stable leaf measure    mu_s(future from M)    = lambda^(M+1) u[initial]\n";
  for (Symbol s = 0; s < config.sft.size(); ++s) {
    out << "  symbol " << config.sft.label(s) << ":  mu_u(N=0) = " << num(measures.unstable(s, 0))
        << "   mu_s(M=0) = " << num(measures.stable(s, 0)) << '\n';
  }
  const auto report = measure_identities(config.sft, measures, 8);
  out << "identities over " << report.words << " words of length <= 8\n";
  out << "  product   " << num(report.product, "%.3e") << '\n';
  out << "  scaling   " << num(report.scaling, "%.3e") << '\n';
  out << "  additive  " << num(report.additivity, "%.3e") << '\n';
  out << "  mass      " << num(report.total_mass, "%.3e") << '\n';
  const Complex ts = tau_s(config.a, perron);
  const Complex tu = tau_u(config.b, perron);
  out << "tau_s(a) = " << num(ts) << "\ntau_u(b) = " << num(tu) << "\nproduct  = " << num(ts * tu) << '\n';
}

void cmd_enumerate(const ExperimentConfig& config, int window, std::ostream& out) {
  const auto points = enumerate_heteroclinic(config.sft, config.P, config.Q, window);
  out << points.size() << " heteroclinic points with window inside [" << -window << ", " << window << "]\n";
  for (const auto& z : points) out << point_str(config.sft, z, window) << '\n';
}

int cmd_trace_run(const ExperimentConfig& config, const TraceRunOptions& options, std::ostream& out) {
  const PerronData perron = compute_perron(config.sft, config.tolerances.perron);
  const int k_max = options.kmax.value_or(config.k_max);
  if (k_max < config.k_min) throw ValidationError("k range is empty");
  std::vector<int> ks(static_cast<std::size_t>(k_max - config.k_min + 1));
  std::iota(ks.begin(), ks.end(), config.k_min);
  const TraceReport report = scaled_trace_sequence(config.sft, perron, config.a, config.b, ks, options.threads);

  std::string csv = to_csv(report);
  if (options.timestamp) csv = "# generated " + timestamp() + "\n" + csv;
  const std::string path = options.out.value_or(config.output);
  if (path.empty() || path == "-") {
    out << csv;
  } else {
    std::ofstream file(path, std::ios::trunc);
    if (!file) throw Error("cannot write " + path);
    file << csv;
    out << "wrote " << report.rows.size() << " rows to " << path << '\n';
  }

  const TraceRow& last = report.rows.back();
  out << "target tau_s(a) tau_u(b) = " << num(report.target) << '\n';
  out << "last row k = " << last.k << ": scaled = " << num(last.scaled) << ", abs_err = " << num(last.abs_err, "%.3e")
      << '\n';
  if (auto rate = fitted_decay(report))
    out << "fitted error decay factor per step = " << num(*rate, "%.6g") << '\n';
  else
    out << "error at or below rounding on every row (exact regime)\n";

  if (report.target == Complex(0.0)) {
    std::optional<int> vanish_from;
    for (auto it = report.rows.rbegin(); it != report.rows.rend() && it->trace.is_zero(); ++it) vanish_from = it->k;
    if (vanish_from)
      out << "vanishing regime: trace is exactly 0 for all k >= " << *vanish_from << " in range\n";
  }

  const bool ok = last.abs_err <= config.tolerances.trace_abs_err;
  out << (ok ? "PASS" : "FAIL") << " final abs_err " << num(last.abs_err, "%.3e") << " vs tolerance "
      << num(config.tolerances.trace_abs_err, "%.1e") << '\n';
  return ok ? kExitOk : kExitNumerical;
}

int cmd_theorem13(const ExperimentConfig& config, int n_max, std::ostream& out) {
  const auto& c = config;
  const FiniteOperator ab = product_operator(c.sft, c.a, c.b, c.window_cap);
  const FiniteOperator ba = product_operator(c.sft, c.b, c.a, c.window_cap);
  out << "a b: rank " << operator_rank(ab) << ", norm " << num(operator_norm(ab)) << ", " << ab.entries().size()
      << " nonzero entries\n";
  out << "b a: rank " << operator_rank(ba) << ", norm " << num(operator_norm(ba)) << ", " << ba.entries().size()
      << " nonzero entries\n";

  int status = kExitOk;
  if (disjoint(c.P, c.Q)) {
    const VanishingReport v = vanishing_product_check(c.sft, c.P, c.Q, c.a, c.b, n_max, c.window_cap);
    out << "n   ||alpha^-n(a) b||   ||b alpha^-n(a)||\n";
    for (std::size_t i = 0; i < v.n.size(); ++i)
      out << num(v.n[i], "%-3g") << ' ' << num(v.norm_ab[i], "%-19.6g") << ' ' << num(v.norm_ba[i], "%.6g") << '\n';
    if (v.vanishes_from) {
      out << "products vanish for n >= " << *v.vanishes_from << '\n';
    } else {
      out << "products do not vanish within n <= " << n_max << '\n';
      status = kExitNumerical;
    }
  } else {
    out << "P and Q share an orbit: vanishing check skipped\n";
  }

  std::vector<int> ns(static_cast<std::size_t>(n_max + 1));
  std::iota(ns.begin(), ns.end(), 0);
  const auto decay = commutator_decay(c.sft, c.a, c.b, ns, c.window_cap);
  out << "n   ||[alpha^n(a), alpha^-n(b)]||\n";
  for (auto [n, norm] : decay) out << num(n, "%-3g") << ' ' << num(norm, "%.6g") << '\n';
  return status;
}

RunSummary cmd_verify(const ExperimentConfig& config, std::ostream& out) {
  RunSummary summary;
  summary.checks = run_acceptance_suite();
  for (auto& check : config_checks(config)) summary.checks.push_back(std::move(check));
  summary.print(out);
  return summary;
}

}  // namespace smale
