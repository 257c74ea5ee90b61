#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "landscape/matrix.hpp"

namespace landscape::kernels {

enum class Norm { L1, L2, Linf };

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Widest available variant, unless LANDSCAPE_ISA=scalar|avx2|neon pins one.
Isa active_isa();

/// Points stored column-major (one contiguous lane per coordinate) so a
/// SIMD register holds the same coordinate of consecutive points.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(const Matrix& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t stride() const noexcept { return stride_; }
  const double* lane(std::size_t j) const { return coords_.data() + j * stride_; }
  double coord(std::size_t i, std::size_t j) const { return coords_[j * stride_ + i]; }
  std::vector<double> point(std::size_t i) const;

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> coords_;
};

/// out[i - begin] = ||query - points[i]||_p for i in [begin, end).
/// Every variant produces bit-identical output: lanes run one candidate
/// each and accumulate coordinates in the same order as the scalar loop.
void lp_distances(Isa isa, std::span<const double> query, const PointSet& points,
                  std::size_t begin, std::size_t end, Norm norm, std::span<double> out);

inline void lp_distances(std::span<const double> query, const PointSet& points, Norm norm,
                         std::span<double> out) {
  lp_distances(active_isa(), query, points, 0, points.size(), norm, out);
}

/// Distances from stored point i to every stored point.
std::vector<double> distances_from(const PointSet& points, std::size_t i, Norm norm);

namespace detail {
using DistanceKernel = void (*)(const double* query, const PointSet& points, std::size_t begin,
                                std::size_t end, Norm norm, double* out);
void lp_distances_scalar(const double* query, const PointSet& points, std::size_t begin,
                         std::size_t end, Norm norm, double* out);
#if defined(LANDSCAPE_HAVE_AVX2)
void lp_distances_avx2(const double* query, const PointSet& points, std::size_t begin,
                       std::size_t end, Norm norm, double* out);
#endif
#if defined(LANDSCAPE_HAVE_NEON)
void lp_distances_neon(const double* query, const PointSet& points, std::size_t begin,
                       std::size_t end, Norm norm, double* out);
#endif
}  // namespace detail

}  // namespace landscape::kernels
