#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ppmgm {

enum class ExperimentKind { kRefine, kSeedSweep, kIterSweep, kSparsifySweep, kTauHeatmap };

enum class Method { kPpmgm, kGrampa, kUmeyama, kGrampaPpmgm, kUmeyamaPpmgm };

enum class SchemeKind { kDense, kSpar1, kSpar2, kSpar3 };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(Method method);
std::string_view to_string(SchemeKind scheme);
// Throw kConfig on unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);
Method parse_method(std::string_view name);
SchemeKind parse_scheme(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kRefine;
  std::size_t n = 500;
  std::vector<double> sigma_grid;
  std::size_t mc_runs = 10;
  std::uint64_t master_seed = 0;

  std::vector<Method> methods;                // refine
  std::vector<double> overlap_grid;           // seed-sweep
  std::vector<std::size_t> iteration_grid;    // iter-sweep
  std::vector<SchemeKind> schemes;            // sparsify-sweep
  double density = 0.051;                     // spar1/spar2 density in sparsify-sweep
  std::optional<std::size_t> top_k;           // spar3; unset means ceil(log n)
  std::vector<double> density_grid;           // tau-heatmap

  // Seed overlap used by random initialisations (refine, iter-sweep,
  // sparsify-sweep, tau-heatmap).
  double seed_overlap = 0.1;
  // N for every experiment except iter-sweep.
  std::size_t iterations = 1;
  // Unset: remove diagonals exactly when N > 1.
  std::optional<bool> remove_diagonal;
  bool early_stop = false;
  double eta = 0.2;
  // wall_seconds is written as 0 unless enabled, which keeps CSV output
  // byte-reproducible.
  bool record_timing = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Desk-scale defaults: n = 500, 10 runs, sigma in {0.1, ..., 0.8}.
ExperimentConfig default_config(ExperimentKind kind);
// n = 800 (1000 for the heatmap) and 25 runs.
ExperimentConfig full_config(ExperimentKind kind);

// Throws kConfig naming the offending field.
void validate(const ExperimentConfig& config);

// Keys missing from the document take the defaults of its "experiment" kind.
// Unknown keys, wrong types and malformed JSON throw kConfig with the field
// name or the line/column of the syntax error.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_json(const ExperimentConfig& config);

// Uniform six-point grid between 42e-3 and 54e-3.
std::vector<double> default_density_grid();
std::vector<double> heatmap_taus(std::size_t n, const std::vector<double>& density_grid);

struct RunRecord {
  std::string experiment;
  std::string method;
  std::size_t n = 0;
  double sigma = 0.0;
  std::string param_name;
  double param_value = 0.0;
  std::size_t run_index = 0;
  double result_overlap = 0.0;
  std::size_t iterations_run = 0;
  double wall_seconds = 0.0;
  std::string status = "ok";
};

inline constexpr std::string_view kCsvHeader =
    "experiment,method,n,sigma,param_name,param_value,run_index,result_overlap,"
    "iterations_run,wall_seconds,status";

// Runs the experiment named by config.kind on `workers` threads (0 picks the
// hardware concurrency). The result is sorted and independent of `workers`.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, unsigned workers = 0);
std::vector<RunRecord> run_refine(const ExperimentConfig& config, unsigned workers = 0);
std::vector<RunRecord> run_seed_sweep(const ExperimentConfig& config, unsigned workers = 0);
std::vector<RunRecord> run_iter_sweep(const ExperimentConfig& config, unsigned workers = 0);
std::vector<RunRecord> run_sparsify_sweep(const ExperimentConfig& config, unsigned workers = 0);

// Orders by (experiment, method, sigma, param_name, param_value, run_index).
void sort_records(std::vector<RunRecord>& records);

std::string to_csv(const std::vector<RunRecord>& records);
void emit_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

// Per (experiment, method, sigma, param) statistics across Monte Carlo runs.
struct SummaryRow {
  std::string experiment;
  std::string method;
  std::size_t n = 0;
  double sigma = 0.0;
  std::string param_name;
  double param_value = 0.0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double mean_overlap = 0.0;
  double p05_overlap = 0.0;
  double p95_overlap = 0.0;
};

inline constexpr std::string_view kSummaryCsvHeader =
    "experiment,method,n,sigma,param_name,param_value,runs,failures,mean_overlap,"
    "p05_overlap,p95_overlap";

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);
std::string to_csv(const std::vector<SummaryRow>& rows);
void emit_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace ppmgm
