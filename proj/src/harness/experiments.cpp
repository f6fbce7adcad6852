#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>

#include "ppmgm/baselines.hpp"
#include "ppmgm/error.hpp"
#include "ppmgm/harness.hpp"
#include "ppmgm/matching.hpp"
#include "ppmgm/models.hpp"
#include "ppmgm/sparsify.hpp"
#include "ppmgm/theory.hpp"

namespace ppmgm {
namespace {

using Clock = std::chrono::steady_clock;

std::string error_status(ErrorCode code) {
  std::string s = std::string("error:") + to_string(code);
  std::replace(s.begin(), s.end(), ' ', '_');
  return s;
}

// Runs `body` and fills the outcome fields of `record`. Failures become an
// error status instead of a missing row.
void measure(const ExperimentConfig& config, RunRecord& record,
             const std::function<void(RunRecord&)>& body) {
  const auto start = Clock::now();
  try {
    body(record);
    record.status = "ok";
  } catch (const Error& e) {
    record.status = error_status(e.code());
    record.result_overlap = 0.0;
    record.iterations_run = 0;
  } catch (const std::exception&) {
    record.status = "error:internal";
    record.result_overlap = 0.0;
    record.iterations_run = 0;
  }
  record.wall_seconds = config.record_timing
                            ? std::chrono::duration<double>(Clock::now() - start).count()
                            : 0.0;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  if (workers <= 1) {
    drain();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
}

std::size_t seed_count(double overlap, std::size_t n) {
  return static_cast<std::size_t>(std::llround(overlap * static_cast<double>(n)));
}

// Everything random in one Monte Carlo run. Streams depend only on the run
// index, so every grid point sees the same draws (common random numbers).
struct RunContext {
  const ExperimentConfig& config;
  double sigma;
  std::size_t run;

  CorrelatedPair sample_pair() const {
    auto gt_rng = RngStream::derive(config.master_seed, run, StreamTag::kGroundTruth);
    auto a_rng = RngStream::derive(config.master_seed, run, StreamTag::kGraphA);
    auto z_rng = RngStream::derive(config.master_seed, run, StreamTag::kNoise);
    const Permutation xstar = sample_permutation_uniform(config.n, gt_rng);
    return sample_cgw(config.n, sigma, xstar, a_rng, z_rng);
  }

  Permutation sample_seed(const Permutation& xstar, double overlap) const {
    auto rng = RngStream::derive(config.master_seed, run, StreamTag::kSeed);
    return sample_seed_with_overlap(xstar, seed_count(overlap, config.n), rng);
  }

  PpmOptions options(std::size_t iterations) const {
    return PpmOptions{iterations, config.remove_diagonal.value_or(iterations > 1),
                      config.early_stop};
  }

  RunRecord blank(std::string_view method, std::string_view param_name, double param_value) const {
    RunRecord r;
    r.experiment = std::string(to_string(config.kind));
    r.method = std::string(method);
    r.n = config.n;
    r.sigma = sigma;
    r.param_name = std::string(param_name);
    r.param_value = param_value;
    r.run_index = run;
    return r;
  }
};

void record_match(RunRecord& r, const MatchResult& m, const Permutation& xstar) {
  r.result_overlap = overlap(m.estimate, xstar);
  r.iterations_run = m.iterations_run;
}

// Tasks are (sigma, run) pairs; each yields the records of every grid point.
using TaskFn = std::function<std::vector<RunRecord>(const RunContext&)>;

std::vector<RunRecord> run_tasks(const ExperimentConfig& config, unsigned workers,
                                 const TaskFn& task) {
  const std::size_t tasks = config.sigma_grid.size() * config.mc_runs;
  std::vector<std::vector<RunRecord>> slots(tasks);
  parallel_for(tasks, workers, [&](std::size_t t) {
    const RunContext ctx{config, config.sigma_grid[t / config.mc_runs], t % config.mc_runs};
    slots[t] = task(ctx);
  });
  std::vector<RunRecord> records;
  for (auto& s : slots) {
    std::move(s.begin(), s.end(), std::back_inserter(records));
  }
  sort_records(records);
  return records;
}

// Samples the pair once for a task; if sampling fails every record of the
// task reports the error.
std::optional<CorrelatedPair> try_sample(const RunContext& ctx, std::vector<RunRecord>& records) {
  std::optional<CorrelatedPair> pair;
  RunRecord probe;
  measure(ctx.config, probe, [&](RunRecord&) { pair = ctx.sample_pair(); });
  if (!pair) {
    for (auto& r : records) {
      r.status = probe.status;
      r.wall_seconds = 0.0;
    }
  }
  return pair;
}

void require_kind(const ExperimentConfig& config, std::initializer_list<ExperimentKind> kinds) {
  if (std::find(kinds.begin(), kinds.end(), config.kind) == kinds.end()) {
    throw Error(ErrorCode::kConfig,
                "experiment '" + std::string(to_string(config.kind)) + "' cannot run here");
  }
  validate(config);
}

}  // namespace

std::vector<RunRecord> run_refine(const ExperimentConfig& config, unsigned workers) {
  require_kind(config, {ExperimentKind::kRefine});
  const auto n_iter = static_cast<double>(config.iterations);
  return run_tasks(config, workers, [&](const RunContext& ctx) {
    std::vector<RunRecord> records;
    for (Method m : config.methods) records.push_back(ctx.blank(to_string(m), "iterations", n_iter));
    const auto pair = try_sample(ctx, records);
    if (!pair) return records;
    const Permutation& xstar = pair->ground_truth;
    const PpmOptions opts = ctx.options(config.iterations);

    // Decompositions are shared by both spectral methods and their refinements.
    std::optional<SpectralDecomposition> eig_a, eig_b;
    std::optional<Permutation> grampa_out, umeyama_out;
    auto spectra = [&] {
      if (!eig_a) {
        eig_a = decompose(pair->a);
        eig_b = decompose(pair->b);
      }
    };
    auto grampa_seed = [&] {
      if (!grampa_out) {
        spectra();
        grampa_out = grampa(*eig_a, *eig_b, config.eta);
      }
      return *grampa_out;
    };
    auto umeyama_seed = [&] {
      if (!umeyama_out) {
        spectra();
        umeyama_out = umeyama(*eig_a, *eig_b);
      }
      return *umeyama_out;
    };

    for (auto& r : records) {
      measure(config, r, [&](RunRecord& rec) {
        switch (parse_method(rec.method)) {
          case Method::kPpmgm:
            record_match(rec, ppmgm(pair->a, pair->b, ctx.sample_seed(xstar, config.seed_overlap),
                                    opts),
                         xstar);
            break;
          case Method::kGrampa:
            rec.result_overlap = overlap(grampa_seed(), xstar);
            break;
          case Method::kUmeyama:
            rec.result_overlap = overlap(umeyama_seed(), xstar);
            break;
          case Method::kGrampaPpmgm:
            record_match(rec, ppmgm(pair->a, pair->b, grampa_seed(), opts), xstar);
            break;
          case Method::kUmeyamaPpmgm:
            record_match(rec, ppmgm(pair->a, pair->b, umeyama_seed(), opts), xstar);
            break;
        }
      });
    }
    return records;
  });
}

std::vector<RunRecord> run_seed_sweep(const ExperimentConfig& config, unsigned workers) {
  require_kind(config, {ExperimentKind::kSeedSweep});
  return run_tasks(config, workers, [&](const RunContext& ctx) {
    std::vector<RunRecord> records;
    for (double o : config.overlap_grid) {
      const double realised =
          static_cast<double>(seed_count(o, config.n)) / static_cast<double>(config.n);
      records.push_back(ctx.blank("ppmgm", "seed_overlap", realised));
    }
    const auto pair = try_sample(ctx, records);
    if (!pair) return records;
    const PpmOptions opts = ctx.options(config.iterations);
    for (std::size_t g = 0; g < config.overlap_grid.size(); ++g) {
      measure(config, records[g], [&](RunRecord& rec) {
        const Permutation seed = ctx.sample_seed(pair->ground_truth, config.overlap_grid[g]);
        record_match(rec, ppmgm(pair->a, pair->b, seed, opts), pair->ground_truth);
      });
    }
    return records;
  });
}

std::vector<RunRecord> run_iter_sweep(const ExperimentConfig& config, unsigned workers) {
  require_kind(config, {ExperimentKind::kIterSweep});
  return run_tasks(config, workers, [&](const RunContext& ctx) {
    std::vector<RunRecord> records;
    for (auto it : config.iteration_grid) {
      records.push_back(ctx.blank("ppmgm", "iterations", static_cast<double>(it)));
    }
    const auto pair = try_sample(ctx, records);
    if (!pair) return records;
    for (std::size_t g = 0; g < config.iteration_grid.size(); ++g) {
      measure(config, records[g], [&](RunRecord& rec) {
        const Permutation seed = ctx.sample_seed(pair->ground_truth, config.seed_overlap);
        record_match(rec,
                     ppmgm(pair->a, pair->b, seed, ctx.options(config.iteration_grid[g])),
                     pair->ground_truth);
      });
    }
    return records;
  });
}

std::vector<RunRecord> run_sparsify_sweep(const ExperimentConfig& config, unsigned workers) {
  require_kind(config, {ExperimentKind::kSparsifySweep, ExperimentKind::kTauHeatmap});

  struct Variant {
    std::string method;
    std::string param_name;
    double param_value;
    std::optional<SparsifyScheme> scheme;
  };
  std::vector<Variant> variants;
  if (config.kind == ExperimentKind::kTauHeatmap) {
    for (double p : config.density_grid) {
      variants.push_back({"spar1", "p", p, Binarize{tau_for_density(p, config.n)}});
    }
  } else {
    const double tau = tau_for_density(config.density, config.n);
    const std::size_t k = config.top_k.value_or(default_top_k(config.n));
    for (SchemeKind s : config.schemes) {
      switch (s) {
        case SchemeKind::kDense:
          variants.push_back({"dense", "none", 0.0, std::nullopt});
          break;
        case SchemeKind::kSpar1:
          variants.push_back({"spar1", "p", config.density, Binarize{tau}});
          break;
        case SchemeKind::kSpar2:
          variants.push_back({"spar2", "p", config.density, HardThreshold{tau}});
          break;
        case SchemeKind::kSpar3:
          variants.push_back({"spar3", "k", static_cast<double>(k), TopK{k}});
          break;
      }
    }
  }

  return run_tasks(config, workers, [&](const RunContext& ctx) {
    std::vector<RunRecord> records;
    for (const auto& v : variants) records.push_back(ctx.blank(v.method, v.param_name, v.param_value));
    const auto pair = try_sample(ctx, records);
    if (!pair) return records;
    const PpmOptions opts = ctx.options(config.iterations);
    for (std::size_t g = 0; g < variants.size(); ++g) {
      measure(config, records[g], [&](RunRecord& rec) {
        const Permutation seed = ctx.sample_seed(pair->ground_truth, config.seed_overlap);
        if (!variants[g].scheme) {
          record_match(rec, ppmgm(pair->a, pair->b, seed, opts), pair->ground_truth);
          return;
        }
        const SymmetricMatrix a = apply_scheme(pair->a, *variants[g].scheme);
        const SymmetricMatrix b = apply_scheme(pair->b, *variants[g].scheme);
        record_match(rec, ppmgm(a, b, seed, opts), pair->ground_truth);
      });
    }
    return records;
  });
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, unsigned workers) {
  switch (config.kind) {
    case ExperimentKind::kRefine: return run_refine(config, workers);
    case ExperimentKind::kSeedSweep: return run_seed_sweep(config, workers);
    case ExperimentKind::kIterSweep: return run_iter_sweep(config, workers);
    case ExperimentKind::kSparsifySweep:
    case ExperimentKind::kTauHeatmap: return run_sparsify_sweep(config, workers);
  }
  throw Error(ErrorCode::kConfig, "unknown experiment kind");
}

std::vector<double> heatmap_taus(std::size_t n, const std::vector<double>& density_grid) {
  std::vector<double> taus;
  for (double p : density_grid) taus.push_back(tau_for_density(p, n));
  return taus;
}

}  // namespace ppmgm
