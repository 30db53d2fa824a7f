#pragma once

// Experiment configuration: a JSON document naming the shift, the orbit sets
// P and Q, the elements a (stable side, rays over Q) and b (unstable side,
// rays over P), the k range, and tolerances. See README.md for the schema.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "smale/algebra.hpp"
#include "smale/points.hpp"
#include "smale/sft.hpp"

namespace smale {

struct Tolerances {
  double perron = 1e-12;
  /// Required final |scaled - target| of a trace run.
  double trace_abs_err = 1e-7;
  bool operator==(const Tolerances&) const = default;
};

struct ExperimentConfig {
  Sft sft;
  OrbitSet P;
  OrbitSet Q;
  StableElement a;
  UnstableElement b;
  int k_min = 0;
  int k_max = 20;
  /// Enumeration window for `enumerate` and the brute-force oracle.
  int window = 6;
  /// Widest free block product_operator may enumerate.
  int window_cap = 20;
  Tolerances tolerances;
  std::string output;

  bool operator==(const ExperimentConfig&) const = default;
};

/// {"symbols": [...], "matrix": [[...], ...]}
nlohmann::ordered_json sft_to_json(const Sft& sft);
Sft sft_from_json(const nlohmann::json& doc);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
/// Throws ValidationError for any schema or admissibility problem.
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Throws ParseError (with line) for unreadable or malformed documents and
/// ValidationError for well-formed documents that describe an invalid setup.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

std::string write_config(const ExperimentConfig& config);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

/// JSON for rays; `window` is the ray's end (left) or start (right).
nlohmann::ordered_json left_ray_to_json(const Sft& sft, const LeftRay& ray);
nlohmann::ordered_json right_ray_to_json(const Sft& sft, const RightRay& ray);
LeftRay left_ray_from_json(const Sft& sft, const nlohmann::json& doc, int window);
RightRay right_ray_from_json(const Sft& sft, const nlohmann::json& doc, int window);

}  // namespace smale
