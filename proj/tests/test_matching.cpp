#include <doctest.h>

#include <limits>

#include "ppmgm/error.hpp"
#include "ppmgm/matching.hpp"
#include "ppmgm/models.hpp"
#include "ppmgm/theory.hpp"
#include "test_support.hpp"

using namespace ppmgm;
using test::perm;

namespace {

// Reference greedy matching: repeatedly take the largest remaining entry,
// ties to the smaller row and then the smaller column.
Permutation greedy_oracle(Eigen::MatrixXd c) {
  const Eigen::Index n = c.rows();
  std::vector<std::uint32_t> map(static_cast<std::size_t>(n));
  std::vector<bool> row_used(n, false), col_used(n, false);
  for (Eigen::Index step = 0; step < n; ++step) {
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (row_used[i]) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        if (bi < 0 || c(i, j) > c(bi, bj)) bi = i, bj = j;
      }
    }
    row_used[bi] = col_used[bj] = true;
    map[static_cast<std::size_t>(bi)] = static_cast<std::uint32_t>(bj);
  }
  return Permutation(std::move(map));
}

Eigen::MatrixXd random_square(Eigen::Index n, RngStream& rng, bool small_integers) {
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      c(i, j) = small_integers ? static_cast<double>(rng.below(3)) : rng.normal(1.0);
  return c;
}

SymmetricMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return SymmetricMatrix::from_dense(m);
}

}  // namespace

TEST_CASE("gmwm: worked examples") {
  Eigen::MatrixXd c(2, 2);
  c << 2, 0, 0, 1;
  CHECK(gmwm(c) == Permutation::identity(2));
  c << 0, 5, 1, 0;
  CHECK(gmwm(c) == perm({1, 0}));
  c << 1, 1, 1, 1;
  CHECK(gmwm(c) == Permutation::identity(2));
}

TEST_CASE("gmwm: agrees with the quadratic-scan oracle") {
  RngStream rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(12));
    const Eigen::MatrixXd c = random_square(n, rng, trial % 2 == 0);
    CHECK(gmwm(c) == greedy_oracle(c));
  }
}

TEST_CASE("gmwm: larger instance against the oracle") {
  RngStream rng(4);
  const Eigen::MatrixXd c = random_square(120, rng, false);
  CHECK(gmwm(c) == greedy_oracle(c));
}

TEST_CASE("gmwm: rejects bad input") {
  CHECK_THROWS_AS(gmwm(Eigen::MatrixXd::Zero(2, 3)), Error);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(3, 3);
  c(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(gmwm(c), Error);
  CHECK(gmwm(Eigen::MatrixXd(0, 0)).size() == 0);
}

TEST_CASE("power_step: identity cases") {
  const auto x = test::random_perm(7, 3);
  const auto id7 = SymmetricMatrix::identity(7);
  CHECK(power_step(id7, id7, x) == x.matrix());
  const auto a = test::random_goe(7, 1), b = test::random_goe(7, 2);
  CHECK((power_step(a, b, Permutation::identity(7)) - test::naive_product(a.dense(), b.dense()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("power_step: matches the explicit matrix product") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = test::random_goe(9, 10 + s), b = test::random_goe(9, 30 + s);
    const auto x = test::random_perm(9, 50 + s);
    const Eigen::MatrixXd expected =
        test::naive_product(test::naive_product(a.dense(), x.matrix()), b.dense());
    CHECK((power_step(a, b, x) - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("power_step: size mismatch") {
  CHECK_THROWS_AS(power_step(test::random_goe(3, 1), test::random_goe(4, 1),
                             Permutation::identity(3)),
                  Error);
}

TEST_CASE("remove_diagonal") {
  CHECK(remove_diagonal(SymmetricMatrix::identity(4)) == SymmetricMatrix(4));
  const auto m = mat({{1, 5}, {5, 2}});
  CHECK(remove_diagonal(m) == mat({{0, 5}, {5, 0}}));
  CHECK(remove_diagonal(remove_diagonal(m)) == remove_diagonal(m));
}

TEST_CASE("qap_objective: identities") {
  CHECK(qap_objective(SymmetricMatrix::identity(6), SymmetricMatrix::identity(6),
                      Permutation::identity(6)) == 6.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = test::random_goe(5, s), b = test::random_goe(5, 100 + s);
    const auto x = test::random_perm(5, 200 + s);
    const Eigen::MatrixXd xm = x.matrix();
    const double frob = (a.dense().cwiseProduct(xm * b.dense() * xm.transpose())).sum();
    CHECK(qap_objective(a, b, x) == doctest::Approx(frob).epsilon(1e-12));

    // Relabeling A by p (A'_ij = A_p(i)p(j), i.e. P A P^T) is absorbed by x o p.
    const auto p = test::random_perm(5, 300 + s);
    const Eigen::MatrixXd pm = p.matrix();
    const auto relabeled = SymmetricMatrix::from_upper(pm * a.dense() * pm.transpose());
    CHECK(qap_objective(relabeled, b, compose(x, p)) ==
          doctest::Approx(qap_objective(a, b, x)).epsilon(1e-12));
  }
}

TEST_CASE("brute_force_qap: noiseless instance returns the identity") {
  RngStream rng(8);
  const auto pair = sample_cgw(5, 0.0, Permutation::identity(5), rng);
  const auto best = brute_force_qap(pair.a, pair.b);
  CHECK(best == Permutation::identity(5));
  CHECK(qap_objective(pair.a, pair.b, best) ==
        doctest::Approx(pair.a.dense().squaredNorm()).epsilon(1e-12));
}

TEST_CASE("brute_force_qap: small sizes and limits") {
  CHECK(brute_force_qap(SymmetricMatrix::identity(1), SymmetricMatrix::identity(1)) ==
        Permutation::identity(1));
  try {
    brute_force_qap(SymmetricMatrix(10), SymmetricMatrix(10));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInstanceTooLarge);
  }
}

TEST_CASE("brute_force_qap dominates ppmgm on random instances") {
  RngStream rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 3 + trial % 6;
    const auto xstar = sample_permutation_uniform(n, rng);
    const auto pair = sample_cgw(n, 0.5, xstar, rng);
    const auto seed = sample_permutation_uniform(n, rng);
    const auto best = brute_force_qap(pair.a, pair.b);
    const auto res = ppmgm::ppmgm(pair.a, pair.b, seed, PpmOptions{3, false, false});
    CHECK(qap_objective(pair.a, pair.b, best) >= qap_objective(pair.a, pair.b, res.estimate));
  }
}

TEST_CASE("ppmgm: one iteration is gmwm of the power step") {
  const auto a = test::random_goe(30, 1), b = test::random_goe(30, 2);
  const auto x0 = test::random_perm(30, 3);
  const auto res = ppmgm::ppmgm(a, b, x0, PpmOptions{});
  CHECK(res.estimate == gmwm(power_step(a, b, x0)));
  CHECK(res.iterations_run == 1);
  CHECK(res.trace.empty());
}

TEST_CASE("ppmgm: diagonal removal feeds the hollow matrices") {
  const auto a = test::random_goe(25, 4), b = test::random_goe(25, 5);
  const auto x0 = test::random_perm(25, 6);
  const auto res = ppmgm::ppmgm(a, b, x0, PpmOptions{1, true, false});
  CHECK(res.estimate == gmwm(power_step(remove_diagonal(a), remove_diagonal(b), x0)));
}

TEST_CASE("ppmgm: noiseless recovery from half-correct seeds at n = 200") {
  int exact = 0;
  for (std::uint64_t run = 0; run < 25; ++run) {
    auto a_rng = RngStream::derive(2024, run, StreamTag::kGraphA);
    auto z_rng = RngStream::derive(2024, run, StreamTag::kNoise);
    auto s_rng = RngStream::derive(2024, run, StreamTag::kSeed);
    const auto id = Permutation::identity(200);
    const auto pair = sample_cgw(200, 0.0, id, a_rng, z_rng);
    const auto seed = sample_seed_with_overlap(id, 100, s_rng);
    exact += ppmgm::ppmgm(pair.a, pair.b, seed, PpmOptions{}).estimate == id;
  }
  CHECK(exact >= 24);
}

TEST_CASE("ppmgm: trace, iteration count and early stop") {
  RngStream rng(12);
  const auto xstar = sample_permutation_uniform(120, rng);
  const auto pair = sample_cgw(120, 0.1, xstar, rng);
  const auto seed = sample_seed_with_overlap(xstar, 60, rng);

  const auto full = ppmgm::ppmgm(pair.a, pair.b, seed, PpmOptions{6, true, false}, xstar);
  CHECK(full.iterations_run == 6);
  CHECK(full.trace.size() == 6);
  CHECK_FALSE(full.converged_early);
  CHECK(full.trace.back() == overlap(full.estimate, xstar));

  const auto early = ppmgm::ppmgm(pair.a, pair.b, seed, PpmOptions{8, true, true}, xstar);
  CHECK(early.iterations_run <= 8);
  CHECK(early.trace.size() == early.iterations_run);
  CHECK(early.trace.back() == overlap(early.estimate, xstar));
  if (early.converged_early) {
    CHECK(ppmgm::ppmgm(pair.a, pair.b, early.estimate, PpmOptions{1, true, false}).estimate ==
          early.estimate);
  }
}

TEST_CASE("ppmgm: a fixpoint seed stops after one iteration") {
  // The largest remaining entry of the Gram matrix A A always sits on its diagonal.
  const auto a = test::random_goe(40, 9);
  const auto id = Permutation::identity(40);
  const auto res = ppmgm::ppmgm(a, a, id, PpmOptions{5, false, true});
  CHECK(res.estimate == id);
  CHECK(res.iterations_run == 1);
  CHECK(res.converged_early);
}

TEST_CASE("ppmgm: invalid options") {
  const auto a = test::random_goe(5, 1);
  CHECK_THROWS_AS(ppmgm::ppmgm(a, a, Permutation::identity(5), PpmOptions{0, false, false}), Error);
  CHECK_THROWS_AS(ppmgm::ppmgm(a, a, Permutation::identity(5), PpmOptions{}, Permutation::identity(4)),
                  Error);
}
