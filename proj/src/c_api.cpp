#include "ppmgm/ppmgm.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppmgm/baselines.hpp"
#include "ppmgm/error.hpp"
#include "ppmgm/harness.hpp"
#include "ppmgm/matching.hpp"
#include "ppmgm/models.hpp"
#include "ppmgm/sparsify.hpp"
#include "ppmgm/theory.hpp"

struct pgm_matrix {
  ppmgm::SymmetricMatrix value;
};

struct pgm_permutation {
  ppmgm::Permutation value;
};

struct pgm_pair {
  pgm_matrix a;
  pgm_matrix b;
  pgm_permutation ground_truth;
};

struct pgm_config {
  ppmgm::ExperimentConfig value;
};

struct pgm_results {
  std::vector<ppmgm::RunRecord> records;
};

namespace {

thread_local std::string g_last_error;

pgm_status map_code(ppmgm::ErrorCode code) {
  using ppmgm::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidDimension: return PGM_ERR_INVALID_DIMENSION;
    case ErrorCode::kInvalidParameter: return PGM_ERR_INVALID_PARAMETER;
    case ErrorCode::kInvalidInput: return PGM_ERR_INVALID_INPUT;
    case ErrorCode::kInfeasibleOverlap: return PGM_ERR_INFEASIBLE_OVERLAP;
    case ErrorCode::kInstanceTooLarge: return PGM_ERR_INSTANCE_TOO_LARGE;
    case ErrorCode::kIndexOutOfRange: return PGM_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::kDomain: return PGM_ERR_DOMAIN;
    case ErrorCode::kNumerical: return PGM_ERR_NUMERICAL;
    case ErrorCode::kConfig: return PGM_ERR_CONFIG;
    case ErrorCode::kIo: return PGM_ERR_IO;
  }
  return PGM_ERR_INTERNAL;
}

pgm_status fail(pgm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, converting exceptions into status codes.
template <class Fn>
pgm_status guard(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return PGM_OK;
  } catch (const ppmgm::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PGM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PGM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PGM_ERR_INTERNAL, "unknown exception");
  }
}

bool any_null() { return false; }
template <class T, class... Rest>
bool any_null(const T* p, const Rest*... rest) {
  return p == nullptr || any_null(rest...);
}

#define PGM_REQUIRE(...)                                              \
  do {                                                                \
    if (any_null(__VA_ARGS__)) {                                      \
      return fail(PGM_ERR_NULL_ARGUMENT, "null argument");            \
    }                                                                 \
  } while (0)

Eigen::MatrixXd read_row_major(const double* values, std::size_t n) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * n + j];
    }
  }
  return m;
}

void write_row_major(const Eigen::MatrixXd& m, double* out, std::size_t count) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (count != n * n) {
    throw ppmgm::Error(ppmgm::ErrorCode::kInvalidDimension,
                       "output buffer holds " + std::to_string(count) + " values, need " +
                           std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ppmgm::RngStream stream_for(uint64_t seed, uint64_t stream, ppmgm::StreamTag tag) {
  return ppmgm::RngStream::derive(seed, stream, tag);
}

pgm_pair* wrap(ppmgm::CorrelatedPair pair) {
  return new pgm_pair{{std::move(pair.a)}, {std::move(pair.b)}, {std::move(pair.ground_truth)}};
}

}  // namespace

extern "C" {

const char* pgm_version(void) { return "1.0.0"; }

const char* pgm_status_string(pgm_status status) {
  switch (status) {
    case PGM_OK: return "ok";
    case PGM_ERR_NULL_ARGUMENT: return "null argument";
    case PGM_ERR_INVALID_DIMENSION: return "invalid dimension";
    case PGM_ERR_INVALID_PARAMETER: return "invalid parameter";
    case PGM_ERR_INVALID_INPUT: return "invalid input";
    case PGM_ERR_INFEASIBLE_OVERLAP: return "infeasible overlap";
    case PGM_ERR_INSTANCE_TOO_LARGE: return "instance too large";
    case PGM_ERR_INDEX_OUT_OF_RANGE: return "index out of range";
    case PGM_ERR_DOMAIN: return "domain error";
    case PGM_ERR_NUMERICAL: return "numerical failure";
    case PGM_ERR_CONFIG: return "config error";
    case PGM_ERR_IO: return "i/o error";
    case PGM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pgm_last_error(void) { return g_last_error.c_str(); }

void pgm_string_free(char* s) { delete[] s; }

// ---- permutations

pgm_status pgm_permutation_create(const uint32_t* map, size_t n, pgm_permutation** out) {
  PGM_REQUIRE(out);
  if (n > 0) PGM_REQUIRE(map);
  return guard([&] {
    *out = new pgm_permutation{ppmgm::Permutation(std::vector<uint32_t>(map, map + n))};
  });
}

pgm_status pgm_permutation_identity(size_t n, pgm_permutation** out) {
  PGM_REQUIRE(out);
  return guard([&] { *out = new pgm_permutation{ppmgm::Permutation::identity(n)}; });
}

void pgm_permutation_destroy(pgm_permutation* p) { delete p; }

size_t pgm_permutation_size(const pgm_permutation* p) { return p ? p->value.size() : 0; }

pgm_status pgm_permutation_get(const pgm_permutation* p, uint32_t* out, size_t n) {
  PGM_REQUIRE(p, out);
  if (n != p->value.size()) {
    return fail(PGM_ERR_INVALID_DIMENSION, "buffer size does not match permutation size");
  }
  const auto map = p->value.map();
  std::copy(map.begin(), map.end(), out);
  g_last_error.clear();
  return PGM_OK;
}

pgm_status pgm_overlap(const pgm_permutation* x, const pgm_permutation* y, double* out) {
  PGM_REQUIRE(x, y, out);
  return guard([&] { *out = ppmgm::overlap(x->value, y->value); });
}

pgm_status pgm_frobenius_seed_distance(const pgm_permutation* x, const pgm_permutation* y,
                                       double* out) {
  PGM_REQUIRE(x, y, out);
  return guard([&] { *out = ppmgm::frobenius_seed_distance(x->value, y->value); });
}

// ---- matrices

pgm_status pgm_matrix_create(const double* values, size_t n, pgm_matrix** out) {
  PGM_REQUIRE(out);
  if (n > 0) PGM_REQUIRE(values);
  return guard([&] {
    *out = new pgm_matrix{ppmgm::SymmetricMatrix::from_dense(read_row_major(values, n))};
  });
}

void pgm_matrix_destroy(pgm_matrix* m) { delete m; }

size_t pgm_matrix_size(const pgm_matrix* m) { return m ? m->value.size() : 0; }

pgm_status pgm_matrix_get(const pgm_matrix* m, double* out, size_t count) {
  PGM_REQUIRE(m, out);
  return guard([&] { write_row_major(m->value.dense(), out, count); });
}

pgm_status pgm_matrix_remove_diagonal(const pgm_matrix* m, pgm_matrix** out) {
  PGM_REQUIRE(m, out);
  return guard([&] { *out = new pgm_matrix{ppmgm::remove_diagonal(m->value)}; });
}

// ---- random models

pgm_status pgm_sample_goe(size_t n, uint64_t seed, uint64_t stream, pgm_matrix** out) {
  PGM_REQUIRE(out);
  return guard([&] {
    auto rng = stream_for(seed, stream, ppmgm::StreamTag::kGraphA);
    *out = new pgm_matrix{ppmgm::sample_goe(n, rng)};
  });
}

pgm_status pgm_sample_permutation(size_t n, uint64_t seed, uint64_t stream,
                                  pgm_permutation** out) {
  PGM_REQUIRE(out);
  return guard([&] {
    auto rng = stream_for(seed, stream, ppmgm::StreamTag::kGroundTruth);
    *out = new pgm_permutation{ppmgm::sample_permutation_uniform(n, rng)};
  });
}

pgm_status pgm_sample_seed_with_overlap(const pgm_permutation* xstar, size_t m, uint64_t seed,
                                        uint64_t stream, pgm_permutation** out) {
  PGM_REQUIRE(xstar, out);
  return guard([&] {
    auto rng = stream_for(seed, stream, ppmgm::StreamTag::kSeed);
    *out = new pgm_permutation{ppmgm::sample_seed_with_overlap(xstar->value, m, rng)};
  });
}

pgm_status pgm_sample_cgw(size_t n, double sigma, const pgm_permutation* xstar, uint64_t seed,
                          uint64_t stream, pgm_pair** out) {
  PGM_REQUIRE(xstar, out);
  return guard([&] {
    auto a_rng = stream_for(seed, stream, ppmgm::StreamTag::kGraphA);
    auto z_rng = stream_for(seed, stream, ppmgm::StreamTag::kNoise);
    *out = wrap(ppmgm::sample_cgw(n, sigma, xstar->value, a_rng, z_rng));
  });
}

pgm_status pgm_sample_cer(size_t n, double q, double s, const pgm_permutation* xstar,
                          uint64_t seed, uint64_t stream, pgm_pair** out) {
  PGM_REQUIRE(xstar, out);
  return guard([&] {
    auto rng = stream_for(seed, stream, ppmgm::StreamTag::kGraphA);
    *out = wrap(ppmgm::sample_cer(n, q, s, xstar->value, rng));
  });
}

void pgm_pair_destroy(pgm_pair* pair) { delete pair; }

const pgm_matrix* pgm_pair_a(const pgm_pair* pair) { return pair ? &pair->a : nullptr; }
const pgm_matrix* pgm_pair_b(const pgm_pair* pair) { return pair ? &pair->b : nullptr; }
const pgm_permutation* pgm_pair_ground_truth(const pgm_pair* pair) {
  return pair ? &pair->ground_truth : nullptr;
}

// ---- matching

pgm_status pgm_gmwm(const double* c, size_t n, pgm_permutation** out) {
  PGM_REQUIRE(out);
  if (n > 0) PGM_REQUIRE(c);
  return guard([&] { *out = new pgm_permutation{ppmgm::gmwm(read_row_major(c, n))}; });
}

pgm_status pgm_power_step(const pgm_matrix* a, const pgm_matrix* b, const pgm_permutation* x,
                          double* out, size_t count) {
  PGM_REQUIRE(a, b, x, out);
  return guard([&] { write_row_major(ppmgm::power_step(a->value, b->value, x->value), out, count); });
}

pgm_status pgm_qap_objective(const pgm_matrix* a, const pgm_matrix* b, const pgm_permutation* x,
                             double* out) {
  PGM_REQUIRE(a, b, x, out);
  return guard([&] { *out = ppmgm::qap_objective(a->value, b->value, x->value); });
}

pgm_status pgm_brute_force_qap(const pgm_matrix* a, const pgm_matrix* b, pgm_permutation** out) {
  PGM_REQUIRE(a, b, out);
  return guard([&] { *out = new pgm_permutation{ppmgm::brute_force_qap(a->value, b->value)}; });
}

pgm_status pgm_ppmgm(const pgm_matrix* a, const pgm_matrix* b, const pgm_permutation* x0,
                     const pgm_ppm_options* options, const pgm_permutation* ground_truth,
                     pgm_permutation** estimate, pgm_match_info* info, double* trace) {
  PGM_REQUIRE(a, b, x0, options, estimate);
  return guard([&] {
    const ppmgm::PpmOptions opts{options->max_iterations, options->remove_diagonal != 0,
                                 options->early_stop_on_fixpoint != 0};
    std::optional<ppmgm::Permutation> truth;
    if (ground_truth) truth = ground_truth->value;
    auto result = ppmgm::ppmgm(a->value, b->value, x0->value, opts, truth);
    if (trace && ground_truth) std::copy(result.trace.begin(), result.trace.end(), trace);
    if (info) {
      info->iterations_run = result.iterations_run;
      info->converged_early = result.converged_early ? 1 : 0;
    }
    *estimate = new pgm_permutation{std::move(result.estimate)};
  });
}

// ---- spectral baselines

pgm_status pgm_umeyama(const pgm_matrix* a, const pgm_matrix* b, pgm_permutation** out) {
  PGM_REQUIRE(a, b, out);
  return guard([&] { *out = new pgm_permutation{ppmgm::umeyama(a->value, b->value)}; });
}

pgm_status pgm_grampa(const pgm_matrix* a, const pgm_matrix* b, double eta,
                      pgm_permutation** out) {
  PGM_REQUIRE(a, b, out);
  return guard([&] { *out = new pgm_permutation{ppmgm::grampa(a->value, b->value, eta)}; });
}

// ---- sparsification

pgm_status pgm_sparsify(const pgm_matrix* m, pgm_scheme scheme, double param, pgm_matrix** out) {
  PGM_REQUIRE(m, out);
  return guard([&] {
    ppmgm::SparsifyScheme s;
    switch (scheme) {
      case PGM_SCHEME_BINARIZE: s = ppmgm::Binarize{param}; break;
      case PGM_SCHEME_HARD_THRESHOLD: s = ppmgm::HardThreshold{param}; break;
      case PGM_SCHEME_TOP_K: {
        if (!(param >= 1.0) || param != std::floor(param) || param > 1e15) {
          throw ppmgm::Error(ppmgm::ErrorCode::kInvalidParameter,
                             "top-k needs a positive integer k");
        }
        s = ppmgm::TopK{static_cast<std::size_t>(param)};
        break;
      }
      default:
        throw ppmgm::Error(ppmgm::ErrorCode::kInvalidParameter, "unknown sparsification scheme");
    }
    *out = new pgm_matrix{ppmgm::apply_scheme(m->value, s)};
  });
}

pgm_status pgm_tau_for_density(double p, size_t n, double* out) {
  PGM_REQUIRE(out);
  return guard([&] { *out = ppmgm::tau_for_density(p, n); });
}

pgm_status pgm_density_range(size_t n, double epsilon, double r_const, double* lo, double* hi,
                             int* feasible) {
  PGM_REQUIRE(lo, hi, feasible);
  return guard([&] {
    const auto range = ppmgm::density_range(n, epsilon, r_const);
    *lo = range.lo;
    *hi = range.hi;
    *feasible = range.feasible ? 1 : 0;
  });
}

// ---- theory

pgm_status pgm_c_sigma(double sigma, double* out) {
  PGM_REQUIRE(out);
  return guard([&] { *out = ppmgm::c_sigma(sigma); });
}

pgm_status pgm_kappa(double sigma, double* out) {
  PGM_REQUIRE(out);
  return guard([&] { *out = ppmgm::kappa(sigma); });
}

static void copy_report(const ppmgm::BoundReport& r, pgm_bound_report* out) {
  *out = pgm_bound_report{r.theta, r.sigma, r.n, r.raw, r.clamped};
}

pgm_status pgm_one_iteration_bound(size_t n, double theta, double sigma, pgm_bound_report* out) {
  PGM_REQUIRE(out);
  return guard([&] { copy_report(ppmgm::one_iteration_bound(n, theta, sigma), out); });
}

pgm_status pgm_partial_recovery_bound(size_t n, double theta, double sigma, size_t r,
                                      pgm_bound_report* out) {
  PGM_REQUIRE(out);
  return guard([&] { copy_report(ppmgm::partial_recovery_bound(n, theta, sigma, r), out); });
}

// ---- experiments

pgm_status pgm_config_default(const char* experiment, const char* preset, pgm_config** out) {
  PGM_REQUIRE(experiment, out);
  return guard([&] {
    const auto kind = ppmgm::parse_experiment_kind(experiment);
    const std::string p = preset ? preset : "desk";
    if (p == "desk") {
      *out = new pgm_config{ppmgm::default_config(kind)};
    } else if (p == "full") {
      *out = new pgm_config{ppmgm::full_config(kind)};
    } else {
      throw ppmgm::Error(ppmgm::ErrorCode::kConfig, "unknown preset '" + p + "'");
    }
  });
}

pgm_status pgm_config_parse(const char* json, pgm_config** out) {
  PGM_REQUIRE(json, out);
  return guard([&] { *out = new pgm_config{ppmgm::parse_config(json)}; });
}

pgm_status pgm_config_load(const char* path, pgm_config** out) {
  PGM_REQUIRE(path, out);
  return guard([&] { *out = new pgm_config{ppmgm::load_config(path)}; });
}

void pgm_config_destroy(pgm_config* config) { delete config; }

pgm_status pgm_config_to_json(const pgm_config* config, char** out) {
  PGM_REQUIRE(config, out);
  return guard([&] { *out = dup_string(ppmgm::to_json(config->value)); });
}

const char* pgm_config_experiment(const pgm_config* config) {
  // to_string views static literals, so the pointer outlives the config.
  return config ? ppmgm::to_string(config->value.kind).data() : nullptr;
}

pgm_status pgm_config_validate(const pgm_config* config) {
  PGM_REQUIRE(config);
  return guard([&] { ppmgm::validate(config->value); });
}

pgm_status pgm_config_set_n(pgm_config* config, size_t n) {
  PGM_REQUIRE(config);
  config->value.n = n;
  return PGM_OK;
}

pgm_status pgm_config_set_sigma_grid(pgm_config* config, const double* sigmas, size_t count) {
  PGM_REQUIRE(config);
  if (count > 0) PGM_REQUIRE(sigmas);
  return guard([&] { config->value.sigma_grid.assign(sigmas, sigmas + count); });
}

pgm_status pgm_config_set_mc_runs(pgm_config* config, size_t runs) {
  PGM_REQUIRE(config);
  config->value.mc_runs = runs;
  return PGM_OK;
}

pgm_status pgm_config_set_master_seed(pgm_config* config, uint64_t seed) {
  PGM_REQUIRE(config);
  config->value.master_seed = seed;
  return PGM_OK;
}

pgm_status pgm_config_set_iterations(pgm_config* config, size_t iterations) {
  PGM_REQUIRE(config);
  return guard([&] {
    config->value.iterations = iterations;
    if (config->value.kind == ppmgm::ExperimentKind::kIterSweep) {
      config->value.iteration_grid = {iterations};
    }
  });
}

pgm_status pgm_config_set_remove_diagonal(pgm_config* config, int value) {
  PGM_REQUIRE(config);
  if (value < 0) {
    config->value.remove_diagonal.reset();
  } else {
    config->value.remove_diagonal = value != 0;
  }
  return PGM_OK;
}

pgm_status pgm_config_set_eta(pgm_config* config, double eta) {
  PGM_REQUIRE(config);
  config->value.eta = eta;
  return PGM_OK;
}

pgm_status pgm_config_set_record_timing(pgm_config* config, int value) {
  PGM_REQUIRE(config);
  config->value.record_timing = value != 0;
  return PGM_OK;
}

pgm_status pgm_run_experiment(const pgm_config* config, unsigned workers, pgm_results** out) {
  PGM_REQUIRE(config, out);
  return guard([&] {
    *out = new pgm_results{ppmgm::run_experiment(config->value, workers)};
  });
}

void pgm_results_destroy(pgm_results* results) { delete results; }

size_t pgm_results_size(const pgm_results* results) {
  return results ? results->records.size() : 0;
}

pgm_status pgm_results_get(const pgm_results* results, size_t index, pgm_run_record* out) {
  PGM_REQUIRE(results, out);
  if (index >= results->records.size()) {
    return fail(PGM_ERR_INDEX_OUT_OF_RANGE, "record index " + std::to_string(index) +
                                                " out of range");
  }
  const auto& r = results->records[index];
  *out = pgm_run_record{r.experiment.c_str(), r.method.c_str(), r.n,
                        r.sigma, r.param_name.c_str(), r.param_value,
                        r.run_index, r.result_overlap, r.iterations_run,
                        r.wall_seconds, r.status.c_str()};
  g_last_error.clear();
  return PGM_OK;
}

pgm_status pgm_results_to_csv(const pgm_results* results, char** out) {
  PGM_REQUIRE(results, out);
  return guard([&] { *out = dup_string(ppmgm::to_csv(results->records)); });
}

pgm_status pgm_results_write_csv(const pgm_results* results, const char* path) {
  PGM_REQUIRE(results, path);
  return guard([&] { ppmgm::emit_csv(results->records, path); });
}

pgm_status pgm_results_write_summary_csv(const pgm_results* results, const char* path) {
  PGM_REQUIRE(results, path);
  return guard([&] { ppmgm::emit_summary_csv(ppmgm::summarize(results->records), path); });
}

}  // extern "C"
