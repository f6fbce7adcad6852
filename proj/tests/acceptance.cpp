// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ppmgm/harness.hpp"
#include "ppmgm/matching.hpp"
#include "ppmgm/models.hpp"
#include "ppmgm/sparsify.hpp"
#include "ppmgm/theory.hpp"

using namespace ppmgm;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double mean_of(const std::vector<RunRecord>& records,
               const std::function<bool(const RunRecord&)>& pred) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& r : records) {
    if (pred(r)) {
      total += r.result_overlap;
      ++count;
    }
  }
  return count ? total / static_cast<double>(count) : std::nan("");
}

bool all_ok(const std::vector<RunRecord>& records) {
  return std::all_of(records.begin(), records.end(),
                     [](const RunRecord& r) { return r.status == "ok"; });
}

Outcome seed_sweep_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  auto c = full_config(ExperimentKind::kSeedSweep);
  c.overlap_grid = {0.1};
  c.iterations = 1;
  c.sigma_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  const auto records = run_seed_sweep(c);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = all_ok(records) && seconds < 15 * 60;
  std::string detail = "means:";
  for (double s : c.sigma_grid) {
    const double m = mean_of(records, [&](const RunRecord& r) { return r.sigma == s; });
    pass = pass && m >= 0.95;
    detail += " " + fmt(s, 1) + "->" + fmt(m);
  }
  detail += "; runtime " + fmt(seconds, 1) + " s";
  return {pass, detail};
}

Outcome noiseless_exactness() {
  auto c = default_config(ExperimentKind::kSeedSweep);
  c.n = 500;
  c.sigma_grid = {0.0};
  c.overlap_grid = {0.5};
  c.mc_runs = 25;
  const auto records = run_seed_sweep(c);
  const auto exact = std::count_if(records.begin(), records.end(),
                                   [](const RunRecord& r) { return r.result_overlap == 1.0; });
  return {all_ok(records) && exact >= 24, std::to_string(exact) + "/25 exact"};
}

Outcome iteration_benefit() {
  auto c = default_config(ExperimentKind::kIterSweep);
  c.n = 500;
  c.sigma_grid = {0.75};
  c.iteration_grid = {1, 8};
  c.seed_overlap = 0.1;
  c.mc_runs = 25;
  const auto records = run_iter_sweep(c);
  const double one = mean_of(records, [](const RunRecord& r) { return r.param_value == 1.0; });
  const double eight = mean_of(records, [](const RunRecord& r) { return r.param_value == 8.0; });
  return {all_ok(records) && eight > one, "N=1 " + fmt(one) + ", N=8 " + fmt(eight)};
}

Outcome sparsification_ordering() {
  auto c = default_config(ExperimentKind::kSparsifySweep);
  c.n = 500;
  c.sigma_grid = {0.8};
  c.seed_overlap = 0.1;
  c.mc_runs = 10;
  const auto records = run_sparsify_sweep(c);
  auto m = [&](const char* method) {
    return mean_of(records, [&](const RunRecord& r) { return r.method == method; });
  };
  const double dense = m("dense"), s1 = m("spar1"), s2 = m("spar2"), s3 = m("spar3");
  return {all_ok(records) && dense >= s1 && dense >= s2 && dense >= s3,
          "dense " + fmt(dense) + ", spar1 " + fmt(s1) + ", spar2 " + fmt(s2) + ", spar3 " +
              fmt(s3)};
}

Outcome baseline_failure() {
  auto c = full_config(ExperimentKind::kRefine);
  c.sigma_grid = {0.5};
  c.methods = {Method::kGrampa, Method::kUmeyama};
  c.mc_runs = 10;
  const auto records = run_refine(c);
  const double g = mean_of(records, [](const RunRecord& r) { return r.method == "grampa"; });
  const double u = mean_of(records, [](const RunRecord& r) { return r.method == "umeyama"; });
  return {all_ok(records) && g < 0.2 && u < 0.2, "grampa " + fmt(g) + ", umeyama " + fmt(u)};
}

Outcome oracle_equivalence() {
  std::size_t dominated = 0, brute_ok = 0, fixpoint_ok = 0;
  for (std::uint64_t inst = 0; inst < 200; ++inst) {
    const std::size_t n = 4 + inst % 5;
    auto a_rng = RngStream::derive(606, inst, StreamTag::kGraphA);
    auto z_rng = RngStream::derive(606, inst, StreamTag::kNoise);
    const auto id = Permutation::identity(n);
    const auto pair = sample_cgw(n, 0.0, id, a_rng, z_rng);
    const double self = qap_objective(pair.a, pair.b, id);
    bool strict = true;
    std::vector<std::uint32_t> map(n);
    std::iota(map.begin(), map.end(), 0u);
    while (std::next_permutation(map.begin(), map.end())) {
      strict = strict && qap_objective(pair.a, pair.b, Permutation(map)) < self;
    }
    if (!strict) continue;
    ++dominated;
    brute_ok += brute_force_qap(pair.a, pair.b) == id;
    fixpoint_ok += ppmgm::ppmgm(pair.a, pair.b, id, PpmOptions{}).estimate == id;
  }
  return {dominated > 0 && brute_ok == dominated && fixpoint_ok == dominated,
          std::to_string(dominated) + " strictly dominated instances; brute force id " +
              std::to_string(brute_ok) + ", fixpoint " + std::to_string(fixpoint_ok)};
}

Outcome projection_properties() {
  std::size_t checks = 0, failures = 0;
  auto expect = [&](bool ok) {
    ++checks;
    failures += !ok;
  };
  // Idempotence, exhaustively over S_n for n <= 7.
  for (std::size_t n = 1; n <= 7; ++n) {
    std::vector<std::uint32_t> map(n);
    std::iota(map.begin(), map.end(), 0u);
    do {
      const Permutation x(map);
      expect(gmwm(x.matrix()) == x);
    } while (std::next_permutation(map.begin(), map.end()));
  }
  RngStream rng(707);
  for (int t = 0; t < 3000; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(12));
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) c(i, j) = rng.normal(1.0);
    const auto x = sample_permutation_uniform(static_cast<std::size_t>(n), rng);
    const auto pi = gmwm(c);
    expect(gmwm(pi.matrix()) == pi);
    expect(gmwm(c * x.matrix()).matrix() == pi.matrix() * x.matrix());

    // Planted dominance on a random subset of the diagonal.
    Eigen::MatrixXd d = c;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (rng.bernoulli(0.5)) d(i, i) += 2.0 + std::abs(rng.normal(2.0));
    }
    if (is_diag_dominant(d)) expect(gmwm(d) == Permutation::identity(static_cast<std::size_t>(n)));
    const auto pd = gmwm(d);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (is_row_col_dominant(d, static_cast<std::size_t>(i))) {
        expect(pd(static_cast<std::size_t>(i)) == static_cast<std::uint32_t>(i));
      }
    }
  }
  return {failures == 0, std::to_string(checks - failures) + "/" + std::to_string(checks) +
                             " property checks hold"};
}

Outcome kronecker_identity() {
  RngStream rng(808);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto a = sample_goe(4, rng), b = sample_goe(4, rng);
    const auto x = sample_permutation_uniform(4, rng);
    Eigen::MatrixXd kron(16, 16);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) kron.block(4 * i, 4 * j, 4, 4) = b.dense()(i, j) * a.dense();
    const Eigen::MatrixXd xm = x.matrix();
    const Eigen::MatrixXd c = power_step(a, b, x);
    const Eigen::VectorXd lhs = Eigen::Map<const Eigen::VectorXd>(c.data(), 16);
    const Eigen::VectorXd rhs = kron * Eigen::Map<const Eigen::VectorXd>(xm.data(), 16);
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "max deviation " + sci(worst)};
}

Outcome model_calibration() {
  bool pass = true;
  std::string detail;
  const std::size_t n = 2000;
  {
    const double q = 0.3, s = 0.8;
    RngStream rng(909);
    const auto xstar = sample_permutation_uniform(n, rng);
    const auto pair = sample_cer(n, q, s, xstar, rng);
    double edges = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        edges += pair.b(xstar(i), xstar(j));
        pairs += 1;
      }
    const double z = (edges / pairs - q) / std::sqrt(q * (1 - q) / pairs);
    pass = pass && std::abs(z) <= 3.0;
    detail += "CER z " + fmt(z, 2);
  }
  for (double sigma : {0.3, 0.6, 0.9}) {
    RngStream rng(910 + static_cast<std::uint64_t>(sigma * 10));
    const auto pair = sample_cgw(n, sigma, Permutation::identity(n), rng);
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0, count = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double a = pair.a(i, j), b = pair.b(i, j);
        sa += a; sb += b; saa += a * a; sbb += b * b; sab += a * b; count += 1;
      }
    const double cov = sab / count - sa * sb / (count * count);
    const double corr = cov / std::sqrt((saa / count - sa * sa / (count * count)) *
                                        (sbb / count - sb * sb / (count * count)));
    const double target = std::sqrt(1 - sigma * sigma);
    pass = pass && std::abs(corr - target) <= 0.03;
    detail += "; CGW " + fmt(sigma, 1) + " corr " + fmt(corr) + " vs " + fmt(target);
  }
  {
    const std::size_t m = 300, draws = 200;
    RngStream seed_rng(911);
    const auto x = sample_seed_with_overlap(Permutation::identity(m), m / 2, seed_rng);
    std::size_t in_s = 0, out_s = 0;
    while (x(in_s) != in_s) ++in_s;
    while (x(out_s) == out_s) ++out_s;
    std::vector<double> fixed, moved;
    for (std::size_t d = 0; d < draws; ++d) {
      RngStream rng(5000 + d);
      const auto a = sample_goe(m, rng);
      const Eigen::MatrixXd c = power_step(a, a, x);
      fixed.push_back(c(in_s, in_s));
      moved.push_back(c(out_s, out_s));
    }
    auto z_score = [](const std::vector<double>& v, double expected) {
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
      double sq = 0;
      for (double e : v) sq += (e - mean) * (e - mean);
      return (mean - expected) / std::sqrt(sq / (v.size() - 1) / v.size());
    };
    const double z1 = z_score(fixed, expected_power_step_entry(x, in_s, in_s));
    const double z2 = z_score(moved, expected_power_step_entry(x, out_s, out_s));
    pass = pass && std::abs(z1) <= 5 && std::abs(z2) <= 5;
    detail += "; E[C_ii] z " + fmt(z1, 2) + ", " + fmt(z2, 2);
  }
  return {pass, detail};
}

Outcome tau_solver() {
  double worst = 0.0;
  for (int e = 0; e <= 60; ++e) {
    const double p = std::pow(10.0, -3.0 + 0.05 * e);
    for (std::size_t n : {1u, 10u, 100u, 500u, 1000u}) {
      const double tau = tau_for_density(p, n);
      worst = std::max(worst,
                       std::abs(2.0 * normal_cdf(-tau * std::sqrt(static_cast<double>(n))) - p));
    }
  }
  const bool worked = tau_for_density(1.0, 100) == 0.0 &&
                      std::abs(tau_for_density(0.3173105, 1) - 1.0) <= 1e-4 &&
                      std::abs(tau_for_density(0.05, 100) - 0.1959964) <= 1e-6;
  return {worst <= 1e-10 && worked,
          "max residual " + sci(worst) + (worked ? ", worked values ok" : ", worked values off")};
}

Outcome determinism() {
  bool same = true;
  for (auto kind : {ExperimentKind::kRefine, ExperimentKind::kSeedSweep, ExperimentKind::kIterSweep,
                    ExperimentKind::kSparsifySweep, ExperimentKind::kTauHeatmap}) {
    auto c = default_config(kind);
    c.n = 400;  // the default seed grid needs distinct seed counts
    c.mc_runs = 3;
    c.sigma_grid = {0.1, 0.5};
    same = same && to_csv(run_experiment(c, 1)) == to_csv(run_experiment(c, 8));
  }
  return {same, same ? "byte-identical for all five experiments" : "CSV bytes differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"seed-sweep reproduction (n=800, overlap 0.1, mean >= 0.95 for sigma <= 0.7)",
       seed_sweep_reproduction},
      {"noiseless exactness (n=500, overlap 0.5, >= 24/25 exact)", noiseless_exactness},
      {"iteration benefit (n=500, sigma=0.75, N=8 > N=1)", iteration_benefit},
      {"sparsification ordering (n=500, sigma=0.8, dense >= spar1/2/3)", sparsification_ordering},
      {"baseline failure regime (n=800, sigma=0.5, means < 0.2)", baseline_failure},
      {"oracle equivalence (200 noiseless instances, n=4..8)", oracle_equivalence},
      {"projection properties (n <= 12)", projection_properties},
      {"Kronecker identity (n=4, 1e-12)", kronecker_identity},
      {"model calibration", model_calibration},
      {"tau_p solver (1e-10 residual, worked values)", tau_solver},
      {"determinism (1 vs 8 workers)", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto [name, run] = criteria[i];
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
