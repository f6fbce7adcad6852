#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ppmgm/error.hpp"
#include "ppmgm/harness.hpp"

namespace ppmgm {
namespace {

using nlohmann::json;

constexpr std::pair<ExperimentKind, std::string_view> kKindNames[] = {
    {ExperimentKind::kRefine, "refine"},
    {ExperimentKind::kSeedSweep, "seed-sweep"},
    {ExperimentKind::kIterSweep, "iter-sweep"},
    {ExperimentKind::kSparsifySweep, "sparsify-sweep"},
    {ExperimentKind::kTauHeatmap, "tau-heatmap"},
};

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kPpmgm, "ppmgm"},
    {Method::kGrampa, "grampa"},
    {Method::kUmeyama, "umeyama"},
    {Method::kGrampaPpmgm, "grampa+ppmgm"},
    {Method::kUmeyamaPpmgm, "umeyama+ppmgm"},
};

constexpr std::pair<SchemeKind, std::string_view> kSchemeNames[] = {
    {SchemeKind::kDense, "dense"},
    {SchemeKind::kSpar1, "spar1"},
    {SchemeKind::kSpar2, "spar2"},
    {SchemeKind::kSpar3, "spar3"},
};

template <class Enum, std::size_t N>
std::string_view name_of(const std::pair<Enum, std::string_view> (&table)[N], Enum value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "unknown";
}

template <class Enum, std::size_t N>
Enum value_of(const std::pair<Enum, std::string_view> (&table)[N], std::string_view name,
              std::string_view what) {
  for (const auto& [v, n] : table) {
    if (n == name) return v;
  }
  std::string known;
  for (const auto& [v, n] : table) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw Error(ErrorCode::kConfig,
              "unknown " + std::string(what) + " '" + std::string(name) + "' (expected one of " +
                  known + ")");
}

[[noreturn]] void field_error(std::string_view field, const std::string& message) {
  throw Error(ErrorCode::kConfig, "field '" + std::string(field) + "': " + message);
}

double get_real(const json& v, std::string_view field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

std::size_t get_count(const json& v, std::string_view field) {
  if (!v.is_number_unsigned()) {
    field_error(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool get_bool(const json& v, std::string_view field) {
  if (!v.is_boolean()) field_error(field, "expected true or false");
  return v.get<bool>();
}

std::vector<double> get_reals(const json& v, std::string_view field) {
  if (!v.is_array()) field_error(field, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(get_real(e, field));
  return out;
}

template <class Parse>
auto get_names(const json& v, std::string_view field, Parse parse) {
  if (!v.is_array()) field_error(field, "expected an array of strings");
  std::vector<decltype(parse(std::string_view{}))> out;
  for (const auto& e : v) {
    if (!e.is_string()) field_error(field, "expected an array of strings");
    out.push_back(parse(e.get<std::string>()));
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::size_t seed_count(double overlap, std::size_t n) {
  return static_cast<std::size_t>(std::llround(overlap * static_cast<double>(n)));
}

void check_overlap(double overlap, std::size_t n, std::string_view field) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) field_error(field, "overlap must lie in [0, 1]");
  if (n >= 1 && seed_count(overlap, n) + 1 == n) {
    field_error(field, "overlap rounds to n - 1 agreements, which no permutation has");
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) { return name_of(kKindNames, kind); }
std::string_view to_string(Method method) { return name_of(kMethodNames, method); }
std::string_view to_string(SchemeKind scheme) { return name_of(kSchemeNames, scheme); }

ExperimentKind parse_experiment_kind(std::string_view name) {
  return value_of(kKindNames, name, "experiment");
}
Method parse_method(std::string_view name) { return value_of(kMethodNames, name, "method"); }
SchemeKind parse_scheme(std::string_view name) { return value_of(kSchemeNames, name, "scheme"); }

std::vector<double> default_density_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 6; ++i) grid.push_back(std::lerp(42e-3, 54e-3, i / 5.0));
  return grid;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.n = 500;
  c.mc_runs = 10;
  c.master_seed = 1;
  for (int i = 1; i <= 8; ++i) c.sigma_grid.push_back(i / 10.0);
  switch (kind) {
    case ExperimentKind::kRefine:
      c.methods = {Method::kPpmgm, Method::kGrampa, Method::kUmeyama, Method::kGrampaPpmgm,
                   Method::kUmeyamaPpmgm};
      break;
    case ExperimentKind::kSeedSweep:
      c.overlap_grid = {0.04, 0.0425, 0.045, 0.05, 0.06, 0.1};
      break;
    case ExperimentKind::kIterSweep:
      c.iteration_grid = {1, 2, 4, 8};
      break;
    case ExperimentKind::kSparsifySweep:
      c.schemes = {SchemeKind::kDense, SchemeKind::kSpar1, SchemeKind::kSpar2, SchemeKind::kSpar3};
      break;
    case ExperimentKind::kTauHeatmap:
      c.density_grid = default_density_grid();
      break;
  }
  return c;
}

ExperimentConfig full_config(ExperimentKind kind) {
  ExperimentConfig c = default_config(kind);
  c.n = kind == ExperimentKind::kTauHeatmap ? 1000 : 800;
  c.mc_runs = 25;
  if (kind == ExperimentKind::kIterSweep) c.iteration_grid = {1, 2, 4, 8, 30};
  return c;
}

void validate(const ExperimentConfig& c) {
  if (c.n < 1) field_error("n", "must be at least 1");
  if (c.mc_runs < 1) field_error("mc_runs", "must be at least 1");
  if (c.sigma_grid.empty()) field_error("sigma_grid", "must not be empty");
  for (double s : c.sigma_grid) {
    if (!(s >= 0.0 && s < 1.0)) field_error("sigma_grid", "every sigma must lie in [0, 1)");
  }
  if (c.iterations < 1) field_error("iterations", "must be at least 1");
  if (!(c.eta > 0.0) || !std::isfinite(c.eta)) field_error("eta", "must be positive");
  if (!(c.density > 0.0 && c.density <= 1.0)) field_error("density", "must lie in (0, 1]");
  if (c.top_k && (*c.top_k < 1 || *c.top_k > c.n)) field_error("top_k", "must lie in [1, n]");
  check_overlap(c.seed_overlap, c.n, "seed_overlap");

  switch (c.kind) {
    case ExperimentKind::kRefine:
      if (c.methods.empty()) field_error("methods", "must not be empty");
      break;
    case ExperimentKind::kSeedSweep:
      if (c.overlap_grid.empty()) field_error("overlap_grid", "must not be empty");
      for (double o : c.overlap_grid) check_overlap(o, c.n, "overlap_grid");
      // Two grid points with the same seed count would produce indistinguishable records.
      for (std::size_t i = 0; i < c.overlap_grid.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (seed_count(c.overlap_grid[i], c.n) == seed_count(c.overlap_grid[j], c.n)) {
            field_error("overlap_grid", "entries " + std::to_string(j) + " and " +
                                            std::to_string(i) + " round to the same seed count");
          }
        }
      }
      break;
    case ExperimentKind::kIterSweep:
      if (c.iteration_grid.empty()) field_error("iteration_grid", "must not be empty");
      for (auto it : c.iteration_grid) {
        if (it < 1) field_error("iteration_grid", "iteration counts must be at least 1");
      }
      break;
    case ExperimentKind::kSparsifySweep:
      if (c.schemes.empty()) field_error("schemes", "must not be empty");
      break;
    case ExperimentKind::kTauHeatmap:
      if (c.density_grid.empty()) field_error("density_grid", "must not be empty");
      for (double p : c.density_grid) {
        if (!(p > 0.0 && p <= 1.0)) field_error("density_grid", "densities must lie in (0, 1]");
      }
      break;
  }
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig,
                "malformed config at " + line_column(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    field_error("experiment", "required string is missing");
  }
  ExperimentConfig c = default_config(parse_experiment_kind(doc["experiment"].get<std::string>()));

  for (const auto& [key, v] : doc.items()) {
    if (key == "experiment") continue;
    if (key == "n") {
      c.n = get_count(v, key);
    } else if (key == "sigma_grid") {
      c.sigma_grid = get_reals(v, key);
    } else if (key == "mc_runs") {
      c.mc_runs = get_count(v, key);
    } else if (key == "master_seed") {
      if (!v.is_number_unsigned()) field_error(key, "expected a non-negative 64-bit integer");
      c.master_seed = v.get<std::uint64_t>();
    } else if (key == "methods") {
      c.methods = get_names(v, key, parse_method);
    } else if (key == "overlap_grid") {
      c.overlap_grid = get_reals(v, key);
    } else if (key == "iteration_grid") {
      if (!v.is_array()) field_error(key, "expected an array of integers");
      c.iteration_grid.clear();
      for (const auto& e : v) c.iteration_grid.push_back(get_count(e, key));
    } else if (key == "schemes") {
      c.schemes = get_names(v, key, parse_scheme);
    } else if (key == "density") {
      c.density = get_real(v, key);
    } else if (key == "top_k") {
      if (v.is_null()) {
        c.top_k.reset();
      } else {
        c.top_k = get_count(v, key);
      }
    } else if (key == "density_grid") {
      c.density_grid = get_reals(v, key);
    } else if (key == "seed_overlap") {
      c.seed_overlap = get_real(v, key);
    } else if (key == "iterations") {
      c.iterations = get_count(v, key);
    } else if (key == "remove_diagonal") {
      if (v.is_null()) {
        c.remove_diagonal.reset();
      } else {
        c.remove_diagonal = get_bool(v, key);
      }
    } else if (key == "early_stop") {
      c.early_stop = get_bool(v, key);
    } else if (key == "eta") {
      c.eta = get_real(v, key);
    } else if (key == "record_timing") {
      c.record_timing = get_bool(v, key);
    } else {
      throw Error(ErrorCode::kConfig, "unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string to_json(const ExperimentConfig& c) {
  // ordered_json keeps the fields in declaration order for readable files.
  nlohmann::ordered_json doc;
  doc["experiment"] = std::string(to_string(c.kind));
  doc["n"] = c.n;
  doc["sigma_grid"] = c.sigma_grid;
  doc["mc_runs"] = c.mc_runs;
  doc["master_seed"] = c.master_seed;
  auto& methods = doc["methods"] = nlohmann::ordered_json::array();
  for (auto m : c.methods) methods.push_back(std::string(to_string(m)));
  doc["overlap_grid"] = c.overlap_grid;
  doc["iteration_grid"] = c.iteration_grid;
  auto& schemes = doc["schemes"] = nlohmann::ordered_json::array();
  for (auto s : c.schemes) schemes.push_back(std::string(to_string(s)));
  doc["density"] = c.density;
  doc["top_k"] = c.top_k ? nlohmann::ordered_json(*c.top_k) : nlohmann::ordered_json(nullptr);
  doc["density_grid"] = c.density_grid;
  doc["seed_overlap"] = c.seed_overlap;
  doc["iterations"] = c.iterations;
  doc["remove_diagonal"] =
      c.remove_diagonal ? nlohmann::ordered_json(*c.remove_diagonal) : nlohmann::ordered_json(nullptr);
  doc["early_stop"] = c.early_stop;
  doc["eta"] = c.eta;
  doc["record_timing"] = c.record_timing;
  return doc.dump(2) + "\n";
}

}  // namespace ppmgm
