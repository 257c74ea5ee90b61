#include <arm_neon.h>

#include "landscape/kernels.hpp"

namespace landscape::kernels::detail {

void lp_distances_neon(const double* query, const PointSet& points, std::size_t begin,
                       std::size_t end, Norm norm, double* out) {
  const std::size_t dim = points.dim();
  std::size_t i = begin;
  for (; i + 2 <= end; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < dim; ++j) {
      const float64x2_t diff = vsubq_f64(vld1q_f64(points.lane(j) + i), vdupq_n_f64(query[j]));
      const float64x2_t mag = vabsq_f64(diff);
      switch (norm) {
        case Norm::L1: acc = vaddq_f64(acc, mag); break;
        case Norm::L2: acc = vaddq_f64(acc, vmulq_f64(diff, diff)); break;
        case Norm::Linf: acc = vbslq_f64(vcltq_f64(acc, mag), mag, acc); break;
      }
    }
    if (norm == Norm::L2) acc = vsqrtq_f64(acc);
    vst1q_f64(out + (i - begin), acc);
  }
  if (i < end) lp_distances_scalar(query, points, i, end, norm, out + (i - begin));
}

}  // namespace landscape::kernels::detail
