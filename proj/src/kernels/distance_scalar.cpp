#include <cmath>

#include "landscape/kernels.hpp"

namespace landscape::kernels::detail {

void lp_distances_scalar(const double* query, const PointSet& points, std::size_t begin,
                         std::size_t end, Norm norm, double* out) {
  const std::size_t dim = points.dim();
  for (std::size_t i = begin; i < end; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double diff = points.lane(j)[i] - query[j];
      const double mag = std::fabs(diff);
      switch (norm) {
        case Norm::L1: acc = acc + mag; break;
        case Norm::L2: acc = acc + diff * diff; break;
        case Norm::Linf: acc = acc < mag ? mag : acc; break;
      }
    }
    out[i - begin] = norm == Norm::L2 ? std::sqrt(acc) : acc;
  }
}

}  // namespace landscape::kernels::detail
