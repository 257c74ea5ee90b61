#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "landscape/matrix.hpp"
#include "landscape/sampling.hpp"

namespace landscape {

/// Empty optional = Missing: the statistic is undefined for this sample.
using FeatureValue = std::optional<double>;

struct FeatureVector {
  std::vector<std::string> names;
  std::vector<FeatureValue> values;

  std::size_t size() const noexcept { return names.size(); }
  void append(const FeatureVector& other);
  const FeatureValue& at(std::string_view name) const;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline constexpr std::size_t kFeatureCount = 53;

/// Fixed feature order of feature_vector().
const std::vector<std::string>& feature_names();

/// {0} followed by 200 log-spaced values in [1e-5, 1e5].
std::vector<double> default_eps_grid();

// Each group throws SampleTooSmall when n is below what it needs; degenerate
// statistics within a group come back as Missing.

/// Least-squares meta-models (9 features). Needs n >= 2d + 2.
FeatureVector ela_meta(const Matrix& x, std::span<const double> y);
/// Skewness, excess kurtosis, histogram peak count of y (3). Needs n >= 4.
FeatureVector ela_distr(std::span<const double> y);
/// Nearest-better clustering (5). Needs n >= 3.
FeatureVector nbc(const Matrix& x, std::span<const double> y);
/// Dispersion of the best 2/5/10/25 % (16).
FeatureVector dispersion(const Matrix& x, std::span<const double> y);
/// Information content along a nearest-neighbour tour (5). Needs n >= 3.
FeatureVector info_content(const Matrix& x, std::span<const double> y, std::span<const double> eps_grid);
/// Fitness-distance correlation (6). Needs n >= 3.
FeatureVector fdc(const Matrix& x, std::span<const double> y);
/// PCA explained-variance shares plus dimensionality (9). Needs n > d + 1.
FeatureVector pca_misc(const Matrix& x, std::span<const double> y);

/// All groups in fixed order; a failing group contributes Missing values.
FeatureVector feature_vector(const Sample& sample);

namespace ic {
/// Symbol string of a slope sequence at threshold eps.
std::vector<int> symbols(std::span<const double> slopes, double eps);
double entropy(std::span<const int> symbols);
double partial_information(std::span<const int> symbols);
/// Greedy nearest-neighbour tour from point 0 (Euclidean, ties by index).
std::vector<std::size_t> tour(const Matrix& x);
}  // namespace ic

}  // namespace landscape
