#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "landscape/matrix.hpp"
#include "landscape/problems.hpp"

namespace landscape {

inline constexpr double kNormEpsilon = 1e-8;

struct ProblemRef {
  FunctionId function_id = FunctionId::F1;
  int dim = 0;
  int instance_id = 0;
  int repetition = 0;

  friend bool operator==(const ProblemRef&, const ProblemRef&) = default;
};

struct Sample {
  Matrix x;
  std::vector<double> y;
  Bounds bounds;
  std::uint64_t seed = 0;
  ProblemRef problem_ref;

  std::size_t size() const noexcept { return y.size(); }
  std::size_t dim() const noexcept { return x.cols(); }
};

struct NormalizedSample {
  Matrix x_hat;
  std::vector<double> y_hat;
  double epsilon = kNormEpsilon;
};

/// Latin hypercube design: per coordinate, one point in each of n equal strata.
/// Throws SampleTooSmall (n < 2), InvalidDimension (dim < 1), InvalidBounds.
Matrix lhs_sample(std::size_t n, std::size_t dim, const Bounds& bounds, std::uint64_t seed);

Sample draw_sample(const ProblemInstance& problem, std::size_t n, std::uint64_t seed, int repetition = 0);

/// (x - l) / (u - l + eps), entry-wise.
Matrix normalize_design(const Matrix& x, const Bounds& bounds);
Matrix denormalize_design(const Matrix& x_hat, const Bounds& bounds);

/// ln(1 + y - min) / (ln(1 + max - min) + eps). Throws NonFiniteInput.
std::vector<double> normalize_fitness(std::span<const double> y);

NormalizedSample normalize(const Sample& sample);

}  // namespace landscape
