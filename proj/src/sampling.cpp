#include "landscape/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "landscape/error.hpp"
#include "landscape/rng.hpp"

namespace landscape {

namespace {

// Keeps (k + jitter) / n strictly below (k + 1) / n after rounding.
constexpr double kJitterScale = 1.0 - 0x1.0p-30;

}  // namespace

Matrix lhs_sample(std::size_t n, std::size_t dim, const Bounds& bounds, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::SampleTooSmall, "LHS needs at least 2 points, got " + std::to_string(n));
  if (dim < 1) throw Error(Errc::InvalidDimension, "LHS needs dim >= 1");
  bounds.validate();
  if (bounds.dim() != dim) throw Error(Errc::DimensionMismatch, "bounds dimension differs from sample dimension");

  Rng rng(seed);
  Matrix x(n, dim);
  std::vector<std::size_t> strata(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < dim; ++j) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(strata[i], strata[rng.below(i + 1)]);
    const double lo = bounds.lower[j];
    const double width = bounds.upper[j] - lo;
    for (std::size_t i = 0; i < n; ++i) {
      const double unit = (static_cast<double>(strata[i]) + kJitterScale * rng.uniform()) * inv_n;
      x(i, j) = std::clamp(lo + unit * width, lo, bounds.upper[j]);
    }
  }
  return x;
}

Sample draw_sample(const ProblemInstance& problem, std::size_t n, std::uint64_t seed, int repetition) {
  Sample s;
  s.bounds = problem.bounds();
  s.seed = seed;
  s.problem_ref = {problem.function_id(), problem.dim(), problem.instance_id(), repetition};
  s.x = lhs_sample(n, static_cast<std::size_t>(problem.dim()), s.bounds, seed);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.y[i] = problem.evaluate(s.x.row(i));
  return s;
}

Matrix normalize_design(const Matrix& x, const Bounds& bounds) {
  bounds.validate();
  if (bounds.dim() != x.cols()) throw Error(Errc::DimensionMismatch, "bounds dimension differs from design");
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out(i, j) = (x(i, j) - bounds.lower[j]) / (bounds.upper[j] - bounds.lower[j] + kNormEpsilon);
  return out;
}

Matrix denormalize_design(const Matrix& x_hat, const Bounds& bounds) {
  bounds.validate();
  if (bounds.dim() != x_hat.cols()) throw Error(Errc::DimensionMismatch, "bounds dimension differs from design");
  Matrix out(x_hat.rows(), x_hat.cols());
  for (std::size_t i = 0; i < x_hat.rows(); ++i)
    for (std::size_t j = 0; j < x_hat.cols(); ++j)
      out(i, j) = x_hat(i, j) * (bounds.upper[j] - bounds.lower[j] + kNormEpsilon) + bounds.lower[j];
  return out;
}

std::vector<double> normalize_fitness(std::span<const double> y) {
  if (y.empty()) throw Error(Errc::SampleTooSmall, "normalize_fitness needs at least one value");
  for (double v : y)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteInput, "non-finite fitness value");
  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it;
  const double denom = std::log1p(*hi_it - lo) + kNormEpsilon;
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::log1p(y[i] - lo) / denom;
  return out;
}

NormalizedSample normalize(const Sample& sample) {
  return {normalize_design(sample.x, sample.bounds), normalize_fitness(sample.y), kNormEpsilon};
}

}  // namespace landscape
