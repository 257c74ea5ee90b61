#include <cstdlib>
#include <string>

#include "landscape/error.hpp"
#include "landscape/kernels.hpp"

namespace landscape::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(LANDSCAPE_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(LANDSCAPE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  if (const char* pinned = std::getenv("LANDSCAPE_ISA")) {
    const std::string name(pinned);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon})
      if (name == isa_name(isa) && isa_available(isa)) return isa;
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

detail::DistanceKernel kernel_for(Isa isa) {
  switch (isa) {
#if defined(LANDSCAPE_HAVE_AVX2)
    case Isa::Avx2: return detail::lp_distances_avx2;
#endif
#if defined(LANDSCAPE_HAVE_NEON)
    case Isa::Neon: return detail::lp_distances_neon;
#endif
    default: return detail::lp_distances_scalar;
  }
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

PointSet::PointSet(const Matrix& rows)
    : n_(rows.rows()), dim_(rows.cols()), stride_((rows.rows() + 3) / 4 * 4),
      coords_(stride_ * dim_, 0.0) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) coords_[j * stride_ + i] = rows(i, j);
}

std::vector<double> PointSet::point(std::size_t i) const {
  std::vector<double> p(dim_);
  for (std::size_t j = 0; j < dim_; ++j) p[j] = coord(i, j);
  return p;
}

void lp_distances(Isa isa, std::span<const double> query, const PointSet& points,
                  std::size_t begin, std::size_t end, Norm norm, std::span<double> out) {
  if (query.size() != points.dim())
    throw Error(Errc::DimensionMismatch, "query has " + std::to_string(query.size()) +
                                             " coordinates, points have " + std::to_string(points.dim()));
  if (begin > end || end > points.size() || out.size() < end - begin)
    throw Error(Errc::InvalidArgument, "distance range out of bounds");
  if (!isa_available(isa))
    throw Error(Errc::InvalidArgument, "ISA variant not available: " + std::string(isa_name(isa)));
  kernel_for(isa)(query.data(), points, begin, end, norm, out.data());
}

std::vector<double> distances_from(const PointSet& points, std::size_t i, Norm norm) {
  const auto query = points.point(i);
  std::vector<double> out(points.size());
  lp_distances(query, points, norm, out);
  return out;
}

}  // namespace landscape::kernels
