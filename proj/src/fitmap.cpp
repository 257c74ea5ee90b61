#include "landscape/fitmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "landscape/error.hpp"
#include "landscape/linalg.hpp"

namespace landscape {

namespace {

std::size_t pixel(double p, std::size_t resolution) {
  const auto idx = static_cast<std::size_t>(std::floor(p * static_cast<double>(resolution)));
  return std::min(idx, resolution - 1);
}

Projection project_uncentered(const Matrix& data, const Bounds& bounds) {
  if (data.rows() == 0) throw Error(Errc::SampleTooSmall, "PCA projection of an empty design");
  const auto eig = linalg::symmetric_eigen(linalg::second_moment(data));

  Projection out;
  const std::size_t width = data.cols();
  out.basis.eigenvectors = Matrix(width, 2);
  for (std::size_t r = 0; r < width; ++r)
    for (std::size_t c = 0; c < 2; ++c) out.basis.eigenvectors(r, c) = eig.vectors(r, c);
  out.basis.eigenvalues = {eig.values[0], eig.values[1]};
  out.basis.all_eigenvalues = eig.values;

  const double lo = *std::min_element(bounds.lower.begin(), bounds.lower.end());
  const double hi = *std::max_element(bounds.upper.begin(), bounds.upper.end());
  const double span = hi - lo + kNormEpsilon;

  std::vector<double> kept_coords;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    double p[2] = {0.0, 0.0};
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t r = 0; r < width; ++r) p[c] += data(i, r) * out.basis.eigenvectors(r, c);
    const double u = (p[0] - lo) / span;
    const double v = (p[1] - lo) / span;
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) continue;
    kept_coords.push_back(u);
    kept_coords.push_back(v);
    out.kept.push_back(i);
  }
  out.points = Matrix(out.kept.size(), 2);
  std::copy(kept_coords.begin(), kept_coords.end(), out.points.data().begin());
  return out;
}

void check_mc_dim(std::size_t d) {
  if (d > kMaxMcDim)
    throw Error(Errc::DimensionTooLarge,
                "MC maps support at most " + std::to_string(kMaxMcDim) + " dimensions, got " + std::to_string(d));
  if (d < 2) throw Error(Errc::InvalidDimension, "MC maps need at least 2 dimensions");
}

// Adds one rasterized channel into `map` at `channel`.
void rasterize_into(FitnessMap& map, std::size_t channel, std::span<const double> us, std::span<const double> vs,
                    std::span<const double> y_hat) {
  const std::size_t res = map.resolution();
  std::vector<double> sum(res * res, 0.0);
  std::vector<std::size_t> count(res * res, 0);
  for (std::size_t i = 0; i < y_hat.size(); ++i) {
    const double u = us[i], v = vs[i];
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
      throw Error(Errc::OutOfBounds, "point " + std::to_string(i) + " lies outside [0,1]^2");
    const std::size_t cell = pixel(v, res) * res + pixel(u, res);
    sum[cell] += y_hat[i];
    ++count[cell];
  }
  for (std::size_t cell = 0; cell < res * res; ++cell)
    if (count[cell] > 0) map.set(cell / res, cell % res, channel, sum[cell] / static_cast<double>(count[cell]));
}

}  // namespace

std::string_view map_method_name(MapMethod m) {
  switch (m) {
    case MapMethod::Pca: return "pca";
    case MapMethod::PcaFunc: return "pcafunc";
    case MapMethod::Mc: return "mc";
    case MapMethod::Rmc: return "rmc";
  }
  return "";
}

MapMethod parse_map_method(std::string_view name) {
  for (MapMethod m : {MapMethod::Pca, MapMethod::PcaFunc, MapMethod::Mc, MapMethod::Rmc})
    if (map_method_name(m) == name) return m;
  throw Error(Errc::InvalidArgument, "unknown map method '" + std::string(name) + "'");
}

FitnessMap::FitnessMap(std::size_t resolution, std::size_t channels, MapMethod method)
    : resolution_(resolution), channels_(channels), method_(method),
      values_(resolution * resolution * channels, 1.0), occupancy_(resolution * resolution * channels, 0) {}

std::size_t FitnessMap::occupied_count(std::size_t channel) const {
  std::size_t n = 0;
  for (std::size_t cell = 0; cell < resolution_ * resolution_; ++cell) n += occupancy_[cell * channels_ + channel];
  return n;
}

std::size_t FitnessMap::occupied_channel_count() const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < channels_; ++c) n += occupied_count(c) > 0 ? 1 : 0;
  return n;
}

Projection project_pca(const Matrix& x, const Bounds& bounds) {
  if (x.cols() < 2) throw Error(Errc::InvalidDimension, "PCA projection needs d >= 2");
  return project_uncentered(x, bounds);
}

Projection project_pca_func(const Matrix& x, std::span<const double> y_hat, const Bounds& bounds) {
  if (x.cols() < 2) throw Error(Errc::InvalidDimension, "PCA projection needs d >= 2");
  if (y_hat.size() != x.rows()) throw Error(Errc::DimensionMismatch, "y_hat length differs from design rows");
  Matrix joined(x.rows(), x.cols() + 1);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) joined(i, j) = x(i, j);
    joined(i, x.cols()) = y_hat[i];
  }
  return project_uncentered(joined, bounds);
}

FitnessMap rasterize(const Matrix& points, std::span<const double> y_hat, std::size_t resolution,
                     MapMethod method) {
  if (points.cols() != 2) throw Error(Errc::DimensionMismatch, "rasterize expects n x 2 points");
  if (points.rows() != y_hat.size()) throw Error(Errc::DimensionMismatch, "point count differs from value count");
  if (resolution == 0) throw Error(Errc::InvalidArgument, "resolution must be positive");
  FitnessMap map(resolution, 1, method);
  const auto us = points.column(0);
  const auto vs = points.column(1);
  rasterize_into(map, 0, us, vs, y_hat);
  return map;
}

FitnessMap map_mc(const Matrix& x_hat, std::span<const double> y_hat, std::size_t resolution) {
  const std::size_t d = x_hat.cols();
  check_mc_dim(d);
  if (x_hat.rows() != y_hat.size()) throw Error(Errc::DimensionMismatch, "point count differs from value count");
  FitnessMap map(resolution, kMcChannels, MapMethod::Mc);
  std::size_t channel = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto us = x_hat.column(i);
    for (std::size_t j = i + 1; j < d; ++j) rasterize_into(map, channel++, us, x_hat.column(j), y_hat);
  }
  return map;
}

FitnessMap reduce_channels(const FitnessMap& mc) {
  const std::size_t res = mc.resolution();
  FitnessMap out(res, 1, MapMethod::Rmc);
  for (std::size_t r = 0; r < res; ++r)
    for (std::size_t c = 0; c < res; ++c) {
      double sum = 0.0;
      std::size_t hits = 0;
      for (std::size_t ch = 0; ch < mc.channels(); ++ch)
        if (mc.occupied(r, c, ch)) {
          sum += mc.value(r, c, ch);
          ++hits;
        }
      if (hits > 0) out.set(r, c, 0, sum / static_cast<double>(hits));
    }
  return out;
}

FitnessMap map_rmc(const Matrix& x_hat, std::span<const double> y_hat, std::size_t resolution) {
  return reduce_channels(map_mc(x_hat, y_hat, resolution));
}

FitnessMap build_map(const Sample& sample, MapMethod method, std::size_t resolution) {
  const auto y_hat = normalize_fitness(sample.y);
  switch (method) {
    case MapMethod::Pca:
    case MapMethod::PcaFunc: {
      const Projection proj = method == MapMethod::Pca ? project_pca(sample.x, sample.bounds)
                                                       : project_pca_func(sample.x, y_hat, sample.bounds);
      std::vector<double> values(proj.kept.size());
      for (std::size_t i = 0; i < proj.kept.size(); ++i) values[i] = y_hat[proj.kept[i]];
      return rasterize(proj.points, values, resolution, method);
    }
    case MapMethod::Mc: return map_mc(normalize_design(sample.x, sample.bounds), y_hat, resolution);
    case MapMethod::Rmc: return map_rmc(normalize_design(sample.x, sample.bounds), y_hat, resolution);
  }
  throw Error(Errc::InvalidArgument, "unknown map method");
}

}  // namespace landscape
