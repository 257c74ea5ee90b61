#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "landscape/kernels.hpp"
#include "landscape/matrix.hpp"
#include "landscape/sampling.hpp"

namespace landscape {

using kernels::Norm;

struct CloudConfig {
  std::size_t k = 5;
  Norm p = Norm::Linf;
  double delta_max = 1.5;
  std::size_t d_max = 10;

  std::size_t width() const noexcept { return k * (d_max + 1) + d_max; }
};

/// Accepts "1", "2", "inf". Throws InvalidNorm.
Norm parse_norm(std::string_view text);
std::string_view norm_name(Norm p);

struct CloudEmbedding {
  Matrix embedded;            // n x (k (d_max + 1) + d_max)
  std::vector<int> indicator; // d_max entries
  std::size_t n_points = 0;
};

/// Row i: self first, then nearest neighbours by distance (ties: lower
/// index); entries farther than delta_max are replaced by their predecessor.
/// Throws NeighborhoodTooLarge or InvalidArgument.
std::vector<std::vector<std::size_t>> knn_graph(const Matrix& x_hat, std::size_t k, Norm p, double delta_max);

CloudEmbedding embed_cloud(const Matrix& x, std::span<const double> y, const Bounds& bounds,
                           const CloudConfig& config);
CloudEmbedding embed_cloud(const Sample& sample, const CloudConfig& config);

}  // namespace landscape
