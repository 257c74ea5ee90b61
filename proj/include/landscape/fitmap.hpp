#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "landscape/matrix.hpp"
#include "landscape/sampling.hpp"

namespace landscape {

inline constexpr std::size_t kMapResolution = 224;
inline constexpr std::size_t kMcChannels = 45;
inline constexpr std::size_t kMaxMcDim = 10;

enum class MapMethod { Pca, PcaFunc, Mc, Rmc };

std::string_view map_method_name(MapMethod m);  // "pca", "pcafunc", "mc", "rmc"
MapMethod parse_map_method(std::string_view name);

/// R x R x c grid, channel-last. Unoccupied cells hold 1.0.
class FitnessMap {
 public:
  FitnessMap() = default;
  FitnessMap(std::size_t resolution, std::size_t channels, MapMethod method);

  std::size_t resolution() const noexcept { return resolution_; }
  std::size_t channels() const noexcept { return channels_; }
  MapMethod method() const noexcept { return method_; }

  std::size_t index(std::size_t row, std::size_t col, std::size_t channel) const {
    return (row * resolution_ + col) * channels_ + channel;
  }
  double value(std::size_t row, std::size_t col, std::size_t channel = 0) const {
    return values_[index(row, col, channel)];
  }
  bool occupied(std::size_t row, std::size_t col, std::size_t channel = 0) const {
    return occupancy_[index(row, col, channel)] != 0;
  }
  void set(std::size_t row, std::size_t col, std::size_t channel, double v) {
    values_[index(row, col, channel)] = v;
    occupancy_[index(row, col, channel)] = 1;
  }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> occupancy() const noexcept { return occupancy_; }

  std::size_t occupied_count(std::size_t channel) const;
  std::size_t occupied_channel_count() const;

  friend bool operator==(const FitnessMap&, const FitnessMap&) = default;

 private:
  std::size_t resolution_ = 0;
  std::size_t channels_ = 0;
  MapMethod method_ = MapMethod::Pca;
  std::vector<double> values_;
  std::vector<std::uint8_t> occupancy_;
};

struct PcaBasis {
  Matrix eigenvectors;              // d x 2
  std::vector<double> eigenvalues;  // 2, descending
  std::vector<double> all_eigenvalues;
};

struct Projection {
  Matrix points;                  // n' x 2, inside [0, 1]
  std::vector<std::size_t> kept;  // source row of each projected point
  PcaBasis basis;
};

/// Uncentered PCA of the raw design; projected coordinates are normalized
/// with `bounds` and points leaving [0, 1]^2 are dropped.
Projection project_pca(const Matrix& x, const Bounds& bounds);

/// As project_pca on the concatenation [x | y_hat].
Projection project_pca_func(const Matrix& x, std::span<const double> y_hat, const Bounds& bounds);

/// Mean-aggregating single-channel raster. Throws OutOfBounds.
FitnessMap rasterize(const Matrix& points, std::span<const double> y_hat,
                     std::size_t resolution = kMapResolution, MapMethod method = MapMethod::Pca);

/// One channel per coordinate pair (i < j), lexicographic, padded to 45.
FitnessMap map_mc(const Matrix& x_hat, std::span<const double> y_hat, std::size_t resolution = kMapResolution);

/// Mean over the occupied MC channels of each pixel.
FitnessMap map_rmc(const Matrix& x_hat, std::span<const double> y_hat, std::size_t resolution = kMapResolution);
FitnessMap reduce_channels(const FitnessMap& mc);

FitnessMap build_map(const Sample& sample, MapMethod method, std::size_t resolution = kMapResolution);

}  // namespace landscape
