#include "landscape/fitcloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "landscape/error.hpp"

namespace landscape {

Norm parse_norm(std::string_view text) {
  if (text == "1") return Norm::L1;
  if (text == "2") return Norm::L2;
  if (text == "inf" || text == "Inf" || text == "infinity") return Norm::Linf;
  throw Error(Errc::InvalidNorm, "unsupported norm '" + std::string(text) + "' (expected 1, 2 or inf)");
}

std::string_view norm_name(Norm p) {
  switch (p) {
    case Norm::L1: return "1";
    case Norm::L2: return "2";
    case Norm::Linf: return "inf";
  }
  return "";
}

std::vector<std::vector<std::size_t>> knn_graph(const Matrix& x_hat, std::size_t k, Norm p, double delta_max) {
  const std::size_t n = x_hat.rows();
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
  if (k > n)
    throw Error(Errc::NeighborhoodTooLarge, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  if (!(delta_max >= 0.0)) throw Error(Errc::InvalidArgument, "delta_max must be non-negative");

  const kernels::PointSet points(x_hat);
  std::vector<std::vector<std::size_t>> graph(n, std::vector<std::size_t>(k));
  std::vector<double> dist(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::lp_distances(x_hat.row(i), points, p, dist);
    // Self first regardless of duplicates at distance 0.
    dist[i] = -1.0;
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto closer = [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);
    dist[i] = 0.0;
    auto& row = graph[i];
    std::copy_n(order.begin(), k, row.begin());
    for (std::size_t t = 1; t < k; ++t)
      if (dist[row[t]] > delta_max) row[t] = row[t - 1];
  }
  return graph;
}

CloudEmbedding embed_cloud(const Matrix& x, std::span<const double> y, const Bounds& bounds,
                           const CloudConfig& config) {
  const std::size_t n = x.rows(), d = x.cols();
  if (d > config.d_max)
    throw Error(Errc::DimensionTooLarge,
                "sample dimension " + std::to_string(d) + " exceeds d_max " + std::to_string(config.d_max));
  if (y.size() != n) throw Error(Errc::DimensionMismatch, "fitness length differs from design rows");
  if (!(config.delta_max > 0.0)) throw Error(Errc::InvalidArgument, "delta_max must be positive");

  const Matrix x_hat = normalize_design(x, bounds);
  const auto y_hat = normalize_fitness(y);
  Matrix padded(n, config.d_max, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) padded(i, j) = x_hat(i, j);

  const auto graph = knn_graph(padded, config.k, config.p, config.delta_max);

  CloudEmbedding out;
  out.n_points = n;
  out.indicator.assign(config.d_max, 0);
  std::fill_n(out.indicator.begin(), d, 1);
  out.embedded = Matrix(n, config.width(), 0.0);
  const std::size_t block = config.d_max + 1;
  for (std::size_t i = 0; i < n; ++i) {
    auto row = out.embedded.row(i);
    for (std::size_t t = 0; t < config.k; ++t) {
      const std::size_t j = graph[i][t];
      std::copy_n(padded.row(j).begin(), config.d_max, row.begin() + static_cast<std::ptrdiff_t>(t * block));
      row[t * block + config.d_max] = y_hat[j];
    }
    for (std::size_t j = 0; j < config.d_max; ++j) row[config.k * block + j] = out.indicator[j];
  }
  return out;
}

CloudEmbedding embed_cloud(const Sample& sample, const CloudConfig& config) {
  return embed_cloud(sample.x, sample.y, sample.bounds, config);
}

}  // namespace landscape
