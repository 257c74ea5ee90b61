#include <immintrin.h>

#include "landscape/kernels.hpp"

namespace landscape::kernels::detail {

void lp_distances_avx2(const double* query, const PointSet& points, std::size_t begin,
                       std::size_t end, Norm norm, double* out) {
  const std::size_t dim = points.dim();
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(points.lane(j) + i), _mm256_set1_pd(query[j]));
      const __m256d mag = _mm256_andnot_pd(sign_mask, diff);
      switch (norm) {
        case Norm::L1: acc = _mm256_add_pd(acc, mag); break;
        case Norm::L2: acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff)); break;
        // max_pd(a, b) returns b unless a > b, matching `acc < mag ? mag : acc`
        // for finite operands.
        case Norm::Linf: acc = _mm256_max_pd(mag, acc); break;
      }
    }
    if (norm == Norm::L2) acc = _mm256_sqrt_pd(acc);
    _mm256_storeu_pd(out + (i - begin), acc);
  }
  if (i < end) lp_distances_scalar(query, points, i, end, norm, out + (i - begin));
}

}  // namespace landscape::kernels::detail
