#include "ppmgm/matching.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "ppmgm/error.hpp"
#include "ppmgm/theory.hpp"

namespace ppmgm {
namespace {

void check_same_size(const SymmetricMatrix& a, const SymmetricMatrix& b, const Permutation& x) {
  if (a.size() != b.size() || a.size() != x.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "dimension mismatch: A is " + std::to_string(a.size()) + ", B is " +
                    std::to_string(b.size()) + ", permutation is " + std::to_string(x.size()));
  }
}

struct RowHead {
  double value;
  std::uint32_t row;
};

// Largest value first; equal values go to the smaller row.
struct RowHeadLess {
  bool operator()(const RowHead& a, const RowHead& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.row > b.row;
  }
};

}  // namespace

Permutation gmwm(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols()) throw Error(ErrorCode::kInvalidInput, "gmwm: matrix is not square");
  if (!c.allFinite()) throw Error(ErrorCode::kInvalidInput, "gmwm: matrix has non-finite entries");
  const auto n = static_cast<std::size_t>(c.rows());
  if (n == 0) return Permutation{};

  // order[r * n + t] is the column holding the t-th largest entry of row r.
  std::vector<std::uint32_t> order(n * n);
  std::vector<double> row(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
    }
    auto first = order.begin() + static_cast<std::ptrdiff_t>(r * n);
    auto last = first + static_cast<std::ptrdiff_t>(n);
    std::iota(first, last, std::uint32_t{0});
    std::sort(first, last, [&row](std::uint32_t a, std::uint32_t b) {
      if (row[a] != row[b]) return row[a] > row[b];
      return a < b;
    });
  }

  std::vector<std::size_t> cursor(n, 0);
  std::vector<bool> column_taken(n, false);
  std::vector<std::uint32_t> map(n);

  std::vector<RowHead> heads;
  heads.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    heads.push_back({c(static_cast<Eigen::Index>(r), order[r * n]), static_cast<std::uint32_t>(r)});
  }
  std::priority_queue<RowHead, std::vector<RowHead>, RowHeadLess> heap(RowHeadLess{},
                                                                       std::move(heads));

  // A row's heap value never understates its best free entry, so the first
  // popped row whose head column is still free holds the global maximum.
  std::size_t assigned = 0;
  while (assigned < n) {
    const RowHead top = heap.top();
    heap.pop();
    const std::size_t r = top.row;
    std::size_t& t = cursor[r];
    if (column_taken[order[r * n + t]]) {
      while (column_taken[order[r * n + t]]) ++t;
      heap.push({c(static_cast<Eigen::Index>(r), order[r * n + t]), top.row});
      continue;
    }
    const std::uint32_t col = order[r * n + t];
    map[r] = col;
    column_taken[col] = true;
    ++assigned;
  }
  return Permutation(std::move(map));
}

Eigen::MatrixXd power_step(const SymmetricMatrix& a, const SymmetricMatrix& b,
                           const Permutation& x) {
  check_same_size(a, b, x);
  const auto n = static_cast<Eigen::Index>(a.size());
  // (A X)(:, x(k)) = A(:, k).
  Eigen::MatrixXd ax(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ax.col(x(static_cast<std::size_t>(k))) = a.dense().col(k);
  }
  Eigen::MatrixXd c(n, n);
  c.noalias() = ax * b.dense();
  return c;
}

SymmetricMatrix remove_diagonal(const SymmetricMatrix& m) {
  Eigen::MatrixXd d = m.dense();
  d.diagonal().setZero();
  return SymmetricMatrix::from_dense(std::move(d));
}

double qap_objective(const SymmetricMatrix& a, const SymmetricMatrix& b, const Permutation& x) {
  check_same_size(a, b, x);
  const auto n = static_cast<Eigen::Index>(a.size());
  double total = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto xj = static_cast<Eigen::Index>(x(static_cast<std::size_t>(j)));
    for (Eigen::Index i = 0; i < n; ++i) {
      total += a.dense()(i, j) * b.dense()(x(static_cast<std::size_t>(i)), xj);
    }
  }
  return total;
}

Permutation brute_force_qap(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kInvalidInput, "dimension mismatch");
  const std::size_t n = a.size();
  if (n > kBruteForceMaxN) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "brute force is limited to n <= 9, got n = " + std::to_string(n));
  }
  std::vector<std::uint32_t> current(n);
  std::iota(current.begin(), current.end(), std::uint32_t{0});
  std::vector<std::uint32_t> best = current;
  double best_value = qap_objective(a, b, Permutation(current));
  // next_permutation walks S_n in lexicographic order, so keeping only strict
  // improvements leaves the lexicographically smallest maximiser.
  while (std::next_permutation(current.begin(), current.end())) {
    const double v = qap_objective(a, b, Permutation(current));
    if (v > best_value) {
      best_value = v;
      best = current;
    }
  }
  return Permutation(std::move(best));
}

MatchResult ppmgm(const SymmetricMatrix& a, const SymmetricMatrix& b, const Permutation& x0,
                  const PpmOptions& opts, const std::optional<Permutation>& ground_truth) {
  check_same_size(a, b, x0);
  if (opts.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidParameter, "max_iterations must be at least 1");
  }
  if (ground_truth && ground_truth->size() != x0.size()) {
    throw Error(ErrorCode::kInvalidInput, "ground truth size mismatch");
  }

  std::optional<SymmetricMatrix> hollow_a, hollow_b;
  if (opts.remove_diagonal) {
    hollow_a = remove_diagonal(a);
    hollow_b = remove_diagonal(b);
  }
  const SymmetricMatrix& lhs = hollow_a ? *hollow_a : a;
  const SymmetricMatrix& rhs = hollow_b ? *hollow_b : b;

  MatchResult result;
  result.estimate = x0;
  for (std::size_t k = 0; k < opts.max_iterations; ++k) {
    Permutation next = gmwm(power_step(lhs, rhs, result.estimate));
    ++result.iterations_run;
    if (ground_truth) result.trace.push_back(overlap(next, *ground_truth));
    const bool fixpoint = next == result.estimate;
    result.estimate = std::move(next);
    if (fixpoint && opts.early_stop_on_fixpoint) {
      result.converged_early = true;
      break;
    }
  }
  return result;
}

}  // namespace ppmgm
