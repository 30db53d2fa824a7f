#include "smale/config.hpp"

#include <fstream>
#include <sstream>

#include "smale/errors.hpp"

namespace smale {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::vector<Symbol> symbols_from_json(const Sft& sft, const json& doc, const char* what) {
  if (!doc.is_array()) throw ValidationError(std::string(what) + " must be a list of symbol labels");
  std::vector<Symbol> out;
  for (const auto& label : doc) {
    if (!label.is_string()) throw ValidationError(std::string(what) + " must contain symbol labels (strings)");
    out.push_back(sft.symbol(label.get<std::string>()));
  }
  return out;
}

ordered_json symbols_to_json(const Sft& sft, const std::vector<Symbol>& symbols) {
  ordered_json out = ordered_json::array();
  for (Symbol s : symbols) out.push_back(sft.label(s));
  return out;
}

OrbitSet orbits_from_json(const Sft& sft, const json& doc, const char* name) {
  if (!doc.is_array()) throw ValidationError(std::string(name) + " must be a list of cyclic words");
  std::vector<Orbit> orbits;
  for (const auto& word : doc) orbits.push_back(Orbit::from_cycle(sft, symbols_from_json(sft, word, name)));
  if (orbits.empty()) throw ValidationError(std::string(name) + " must contain at least one orbit");
  return OrbitSet(std::move(orbits));
}

ordered_json orbits_to_json(const Sft& sft, const OrbitSet& set) {
  ordered_json out = ordered_json::array();
  for (const auto& orbit : set.orbits()) out.push_back(symbols_to_json(sft, orbit.cycle()));
  return out;
}

ordered_json complex_to_json(Complex c) { return ordered_json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& doc) {
  if (doc.is_number()) return {doc.get<double>(), 0.0};
  if (!doc.is_array() || doc.size() != 2 || !doc[0].is_number() || !doc[1].is_number()) {
    throw ValidationError("coefficient must be [re, im]");
  }
  return {doc[0].get<double>(), doc[1].get<double>()};
}

int int_field(const json& doc, const char* key, int fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  return doc.at(key).get<int>();
}

template <class Ray, class FromJson>
Element<Ray> element_from_json(const Sft& sft, const json& doc, const OrbitSet& orbits, const char* name,
                               FromJson from_json) {
  if (!doc.is_array()) throw ValidationError(std::string(name) + " must be a list of terms");
  std::vector<typename Element<Ray>::Term> terms;
  for (const auto& term : doc) {
    const int window = int_field(term, "window", 0);
    if (!term.contains("window")) throw ValidationError(std::string(name) + ": term is missing 'window'");
    Ray target = from_json(sft, require(term, "target_ray"), window);
    Ray source = from_json(sft, require(term, "source_ray"), window);
    for (const Ray* ray : {&target, &source}) {
      if (!orbits.contains(ray->tail().orbit())) {
        throw ValidationError(std::string(name) + ": ray tail is not an orbit of " +
                              (Ray::kGrowthDirection > 0 ? "Q" : "P"));
      }
    }
    terms.emplace_back(complex_from_json(require(term, "coeff")), Bisection<Ray>(target, source));
  }
  return Element<Ray>::reduce(sft, terms);
}

template <class Ray, class ToJson>
ordered_json element_to_json(const Sft& sft, const Element<Ray>& element, ToJson to_json) {
  ordered_json out = ordered_json::array();
  for (const auto& [e, c] : element.terms()) {
    ordered_json term;
    term["coeff"] = complex_to_json(c);
    term["target_ray"] = to_json(sft, e.target);
    term["source_ray"] = to_json(sft, e.source);
    term["window"] = e.window();
    out.push_back(std::move(term));
  }
  return out;
}

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

ordered_json sft_to_json(const Sft& sft) {
  ordered_json out;
  out["symbols"] = sft.labels();
  out["matrix"] = sft.matrix();
  return out;
}

Sft sft_from_json(const json& doc) {
  const json& matrix = require(doc, "matrix");
  Sft::Matrix rows;
  try {
    rows = matrix.get<Sft::Matrix>();
  } catch (const json::exception&) {
    throw ValidationError("'matrix' must be a list of integer rows");
  }
  std::vector<std::string> labels;
  if (doc.contains("symbols")) {
    try {
      labels = doc.at("symbols").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw ValidationError("'symbols' must be a list of strings");
    }
  }
  try {
    return Sft(std::move(rows), std::move(labels));
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

ordered_json left_ray_to_json(const Sft& sft, const LeftRay& ray) {
  ordered_json out;
  out["orbit"] = symbols_to_json(sft, ray.tail().orbit().cycle());
  out["phase"] = ray.tail().phase_at(ray.start());
  out["body"] = symbols_to_json(sft, ray.body());
  return out;
}

ordered_json right_ray_to_json(const Sft& sft, const RightRay& ray) {
  ordered_json out;
  out["orbit"] = symbols_to_json(sft, ray.tail().orbit().cycle());
  out["phase"] = ray.tail().phase_at(ray.end());
  out["body"] = symbols_to_json(sft, ray.body());
  return out;
}

LeftRay left_ray_from_json(const Sft& sft, const json& doc, int window) {
  auto cycle = symbols_from_json(sft, require(doc, "orbit"), "orbit");
  auto body = doc.contains("body") ? symbols_from_json(sft, doc.at("body"), "body") : std::vector<Symbol>{};
  const int start = window - static_cast<int>(body.size());
  // The tail reads ... cycle cycle, rotated left by `phase`, right before the body.
  LeftRay ray(Periodic::anchored(sft, cycle, start, int_field(doc, "phase", 0)), start, std::move(body));
  if (!is_admissible(sft, ray)) throw ValidationError("past ray has a forbidden transition");
  return ray;
}

RightRay right_ray_from_json(const Sft& sft, const json& doc, int window) {
  auto cycle = symbols_from_json(sft, require(doc, "orbit"), "orbit");
  auto body = doc.contains("body") ? symbols_from_json(sft, doc.at("body"), "body") : std::vector<Symbol>{};
  const int end = window + static_cast<int>(body.size());
  RightRay ray(window, std::move(body), Periodic::anchored(sft, cycle, end, int_field(doc, "phase", 0)));
  if (!is_admissible(sft, ray)) throw ValidationError("future ray has a forbidden transition");
  return ray;
}

ordered_json config_to_json(const ExperimentConfig& c) {
  ordered_json out = sft_to_json(c.sft);
  out["P"] = orbits_to_json(c.sft, c.P);
  out["Q"] = orbits_to_json(c.sft, c.Q);
  out["a"] = element_to_json(c.sft, c.a, left_ray_to_json);
  out["b"] = element_to_json(c.sft, c.b, right_ray_to_json);
  out["k_range"] = {c.k_min, c.k_max};
  out["window"] = c.window;
  out["window_cap"] = c.window_cap;
  out["tolerances"] = {{"perron", c.tolerances.perron}, {"trace_abs_err", c.tolerances.trace_abs_err}};
  out["output"] = c.output;
  return out;
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object() || doc.empty()) throw ValidationError("configuration document is empty");
  try {
    Sft sft = sft_from_json(doc);
    if (sft.size() < 2) throw ValidationError("the shift needs at least two symbols");
    OrbitSet P = orbits_from_json(sft, require(doc, "P"), "P");
    OrbitSet Q = orbits_from_json(sft, require(doc, "Q"), "Q");
    StableElement a = element_from_json<LeftRay>(sft, require(doc, "a"), Q, "a", left_ray_from_json);
    UnstableElement b = element_from_json<RightRay>(sft, require(doc, "b"), P, "b", right_ray_from_json);
    ExperimentConfig config{std::move(sft), std::move(P), std::move(Q), std::move(a), std::move(b), 0, 20, 6, 20, {}, {}};
    if (doc.contains("k_range")) {
      const auto& range = doc.at("k_range");
      if (!range.is_array() || range.size() != 2 || !range[0].is_number_integer() || !range[1].is_number_integer()) {
        throw ValidationError("k_range must be [k_min, k_max]");
      }
      config.k_min = range[0].get<int>();
      config.k_max = range[1].get<int>();
    }
    if (config.k_min < 0 || config.k_max < config.k_min) throw ValidationError("k_range must satisfy 0 <= k_min <= k_max");
    config.window = int_field(doc, "window", config.window);
    config.window_cap = int_field(doc, "window_cap", config.window_cap);
    if (config.window < 0 || config.window_cap < 0) throw ValidationError("windows must be nonnegative");
    if (doc.contains("tolerances")) {
      const auto& tol = doc.at("tolerances");
      if (!tol.is_object()) throw ValidationError("tolerances must be an object");
      if (tol.contains("perron")) config.tolerances.perron = tol.at("perron").get<double>();
      if (tol.contains("trace_abs_err")) config.tolerances.trace_abs_err = tol.at("trace_abs_err").get<double>();
    }
    if (doc.contains("output")) {
      if (!doc.at("output").is_string()) throw ValidationError("output must be a path string");
      config.output = doc.at("output").get<std::string>();
    }
    return config;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  } catch (const json::exception& e) {
    throw ValidationError(e.what());
  }
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed configuration: ") + e.what(), line_of(text, e.byte));
  }
  return config_from_json(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read configuration file '" + path.string() + "'", 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string write_config(const ExperimentConfig& config) { return config_to_json(config).dump(2) + "\n"; }

void save_config(const ExperimentConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << write_config(config);
}

}  // namespace smale
