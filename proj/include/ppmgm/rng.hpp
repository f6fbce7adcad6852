#pragma once

#include <cstdint>
#include <random>

namespace ppmgm {

// Objects drawn within one Monte Carlo run each get their own sub-stream, so
// adding a new consumer never shifts the draws of an existing one.
enum class StreamTag : std::uint64_t {
  kGroundTruth = 1,
  kGraphA = 2,
  kNoise = 3,
  kSeed = 4,
  kAuxiliary = 5,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Stream for (master seed, run index, object tag). Independent of how runs
  // are scheduled across threads.
  static RngStream derive(std::uint64_t master, std::uint64_t run_index, StreamTag tag);

  double normal(double stddev) { return stddev * standard_normal_(engine_); }
  bool bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }
  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> standard_normal_;
};

}  // namespace ppmgm
