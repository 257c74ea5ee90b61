#include <cmath>
#include <cstring>
#include <vector>

#include "helpers.hpp"
#include "landscape/kernels.hpp"

using namespace landscape;
using namespace landscape::kernels;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> reference_distances(std::span<const double> q, const Matrix& pts, std::size_t begin,
                                        std::size_t end, Norm norm) {
  std::vector<double> out;
  for (std::size_t i = begin; i < end; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < pts.cols(); ++j) {
      const double diff = q[j] - pts(i, j);
      if (norm == Norm::L1) acc += std::fabs(diff);
      else if (norm == Norm::L2) acc += diff * diff;
      else acc = std::max(acc, std::fabs(diff));
    }
    out.push_back(norm == Norm::L2 ? std::sqrt(acc) : acc);
  }
  return out;
}

}  // namespace

TEST_CASE("PointSet stores coordinates in padded lanes") {
  const Matrix m = testing::random_matrix(7, 3, 1);
  const PointSet ps(m);
  CHECK(ps.size() == 7);
  CHECK(ps.dim() == 3);
  CHECK(ps.stride() % 4 == 0);
  CHECK(ps.stride() >= 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(ps.coord(i, j) == m(i, j));
      CHECK(ps.lane(j)[i] == m(i, j));
    }
  CHECK(ps.point(4) == std::vector<double>(m.row(4).begin(), m.row(4).end()));
}

TEST_CASE("scalar kernel matches a direct evaluation") {
  const Matrix m = testing::random_matrix(33, 5, 2, -3.0, 3.0);
  const PointSet ps(m);
  const std::vector<double> q(m.row(3).begin(), m.row(3).end());
  for (Norm norm : {Norm::L1, Norm::L2, Norm::Linf}) {
    std::vector<double> out(33);
    lp_distances(Isa::Scalar, q, ps, 0, 33, norm, out);
    CHECK(bit_equal(out, reference_distances(q, m, 0, 33, norm)));
    CHECK(out[3] == 0.0);
  }
}

TEST_CASE("every available SIMD variant is bit-identical to scalar") {
  std::vector<Isa> variants;
  for (Isa isa : {Isa::Avx2, Isa::Neon})
    if (isa_available(isa)) variants.push_back(isa);
  MESSAGE("SIMD variants available: " << variants.size() << ", active: " << isa_name(active_isa()));
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(70), d = 1 + rng.below(12);
    const Matrix m = testing::random_matrix(n, d, 100 + trial, -5.0, 5.0);
    const PointSet ps(m);
    std::vector<double> q(d);
    for (double& v : q) v = rng.uniform(-5.0, 5.0);
    const std::size_t begin = rng.below(n), end = begin + rng.below(n - begin + 1);
    for (Norm norm : {Norm::L1, Norm::L2, Norm::Linf}) {
      std::vector<double> scalar(end - begin);
      lp_distances(Isa::Scalar, q, ps, begin, end, norm, scalar);
      for (Isa isa : variants) {
        std::vector<double> simd(end - begin, -1.0);
        lp_distances(isa, q, ps, begin, end, norm, simd);
        CHECK_MESSAGE(bit_equal(scalar, simd), isa_name(isa) << " n=" << n << " d=" << d << " [" << begin << ","
                                                              << end << ")");
      }
      std::vector<double> dispatched(end - begin);
      lp_distances(active_isa(), q, ps, begin, end, norm, dispatched);
      CHECK(bit_equal(scalar, dispatched));
    }
  }
}

TEST_CASE("distances_from covers every stored point") {
  const Matrix m = testing::random_matrix(10, 2, 4);
  const PointSet ps(m);
  const auto d = distances_from(ps, 2, Norm::L2);
  REQUIRE(d.size() == 10);
  CHECK(d[2] == 0.0);
  CHECK(bit_equal(d, reference_distances(m.row(2), m, 0, 10, Norm::L2)));
}

TEST_CASE("kernel argument validation") {
  const Matrix m = testing::random_matrix(5, 2, 5);
  const PointSet ps(m);
  std::vector<double> out(5);
  const std::vector<double> wrong_dim{0.0, 0.0, 0.0};
  CHECK_THROWS_CODE(lp_distances(Isa::Scalar, wrong_dim, ps, 0, 5, Norm::L2, out), Errc::DimensionMismatch);
  const std::vector<double> q{0.0, 0.0};
  std::vector<double> small(2);
  CHECK_THROWS_AS(lp_distances(Isa::Scalar, q, ps, 0, 5, Norm::L2, small), Error);
  CHECK_THROWS_AS(lp_distances(Isa::Scalar, q, ps, 4, 9, Norm::L2, out), Error);
}

TEST_CASE("isa names") {
  CHECK(isa_name(Isa::Scalar) == "scalar");
  CHECK(isa_available(Isa::Scalar));
}
