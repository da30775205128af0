#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace regretlab {

/// Seeded random stream. One instance per experiment seed; every stochastic
/// operation takes one of these explicitly, so replays are exact.
///
/// Distribution transforms are implemented here rather than with
/// std::<distribution> so the draw sequence is fixed by this code alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  /// Uniform on (0, 1]; safe to pass to log().
  double uniform01_pos();

  bool bernoulli(double p) { return uniform01() < p; }

  /// Index draw from a probability vector. Walks the cumulative sum, so ties
  /// and rounding slack resolve to the lowest index with mass.
  int categorical(std::span<const double> probs);

  /// Standard normal (Box-Muller, one value per two uniforms).
  double normal();

  /// Gamma(shape, 1), Marsaglia-Tsang; shape > 0.
  double gamma(double shape);

  double beta(double a, double b);

  /// Fills `out` with one draw from Dirichlet(alpha).
  void dirichlet(std::span<const double> alpha, std::span<double> out);

 private:
  std::mt19937_64 engine_;
};

}  // namespace regretlab
