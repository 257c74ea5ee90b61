#include <algorithm>
#include <cmath>

#include "../common/reference.hpp"
#include "helpers.hpp"
#include "landscape/elafeat.hpp"

using namespace landscape;

namespace {

void check_close(const FeatureValue& got, const reference::Opt& want, double tol, const std::string& what) {
  CHECK_MESSAGE(got.has_value() == want.has_value(), what);
  if (got && want) CHECK_MESSAGE(std::fabs(*got - *want) <= tol * std::max(1.0, std::fabs(*want)), what << ": " << *got << " vs " << *want);
}

Matrix column_matrix(const std::vector<double>& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

}  // namespace

TEST_CASE("feature naming and arity") {
  CHECK(feature_names().size() == kFeatureCount);
  CHECK(feature_names().front() == "meta.lin_simple.adj_r2");
  CHECK(feature_names().back() == "basic.dim");
  const auto grid = default_eps_grid();
  CHECK(grid.size() == 201);
  CHECK(grid[0] == 0.0);
  CHECK(grid[1] == doctest::Approx(1e-5));
  CHECK(grid[200] == doctest::Approx(1e5));
}

TEST_CASE("meta-models") {
  const Matrix x = testing::random_matrix(100, 3, 1, -5.0, 5.0);
  std::vector<double> lin(100), quad(100), flat(100, 2.5);
  for (std::size_t i = 0; i < 100; ++i) {
    lin[i] = 1.0 + 2.0 * x(i, 0) - 0.5 * x(i, 1) + 4.0 * x(i, 2);
    quad[i] = x(i, 0) * x(i, 0) + x(i, 1) * x(i, 1) + x(i, 2) * x(i, 2);
  }
  const auto a = ela_meta(x, lin);
  CHECK(*a.at("meta.lin_simple.adj_r2") == doctest::Approx(1.0));
  CHECK(*a.at("meta.lin_simple.intercept") == doctest::Approx(1.0));
  CHECK(*a.at("meta.lin_simple.coef_min") == doctest::Approx(0.5));
  CHECK(*a.at("meta.lin_simple.coef_max") == doctest::Approx(4.0));
  CHECK(*a.at("meta.lin_simple.coef_min_by_max") == doctest::Approx(0.125));

  // Symmetric (centered) design: the sphere has no linear trend.
  Matrix sym(200, 3);
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      sym(i, j) = x(i, j);
      sym(100 + i, j) = -x(i, j);
    }
  std::vector<double> sym_quad(quad);
  sym_quad.insert(sym_quad.end(), quad.begin(), quad.end());
  const auto b = ela_meta(sym, sym_quad);
  CHECK(*b.at("meta.quad_simple.adj_r2") == doctest::Approx(1.0));
  CHECK(*b.at("meta.quad_w_interact.adj_r2") == doctest::Approx(1.0));
  CHECK(std::fabs(*b.at("meta.lin_simple.adj_r2")) < 0.05);
  CHECK(*b.at("meta.quad_simple.cond") == doctest::Approx(1.0));

  const auto c = ela_meta(x, flat);
  CHECK(!c.at("meta.lin_simple.adj_r2").has_value());
  CHECK(!c.at("meta.quad_simple.adj_r2").has_value());
  CHECK_THROWS_CODE(ela_meta(testing::random_matrix(5, 3, 1), std::vector<double>(5, 1.0)), Errc::SampleTooSmall);
}

TEST_CASE("distribution features") {
  std::vector<double> mirror;
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double v = rng.uniform(0.0, 10.0);
    mirror.push_back(v);
    mirror.push_back(-v);
  }
  CHECK(std::fabs(*ela_distr(mirror).at("distr.skewness")) < 1e-12);

  std::vector<double> bimodal;
  for (int i = 0; i < 300; ++i) bimodal.push_back(rng.uniform(0.0, 1.0));
  for (int i = 0; i < 300; ++i) bimodal.push_back(rng.uniform(9.0, 10.0));
  CHECK(*ela_distr(bimodal).at("distr.number_of_peaks") == 2.0);

  std::vector<double> normal(5000);
  for (double& v : normal) v = rng.gaussian();
  CHECK(std::fabs(*ela_distr(normal).at("distr.kurtosis")) < 0.2);

  const auto flat = ela_distr(std::vector<double>(10, 1.0));
  for (const auto& v : flat.values) CHECK(!v.has_value());
  CHECK_THROWS_CODE(ela_distr(std::vector<double>{1, 2, 3}), Errc::SampleTooSmall);
}

TEST_CASE("nearest-better clustering hand cases") {
  const auto chain = nbc(column_matrix({1, 2, 3, 4}), std::vector<double>{1, 2, 3, 4});
  CHECK(*chain.at("nbc.nn_nb.mean_ratio") == 1.0);

  // Two tight clusters whose best points lie in different clusters.
  Matrix x(6, 1);
  const double pos[6] = {0.0, 0.1, 0.2, 10.0, 10.1, 10.2};
  for (int i = 0; i < 6; ++i) x(static_cast<std::size_t>(i), 0) = pos[i];
  const auto two = nbc(x, std::vector<double>{1.0, 2.0, 3.0, 0.5, 2.5, 3.5});
  CHECK(*two.at("nbc.nn_nb.mean_ratio") < 1.0);

  const auto flat = nbc(column_matrix({1, 2, 3, 4}), std::vector<double>(4, 7.0));
  for (const auto& v : flat.values) CHECK(!v.has_value());
}

TEST_CASE("nearest-better clustering matches the O(n^2) reference") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(28), d = 1 + rng.below(5);
    const Matrix x = testing::random_matrix(n, d, 900 + trial, -5.0, 5.0);
    std::vector<double> y(n);
    for (double& v : y) v = rng.uniform(-10.0, 10.0);
    const auto got = nbc(x, y);
    const auto want = reference::nbc(x, y);
    for (std::size_t k = 0; k < 5; ++k) check_close(got.values[k], want[k], 1e-10, got.names[k]);
  }
}

TEST_CASE("dispersion matches the O(n^2) reference") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(29), d = 1 + rng.below(5);
    const Matrix x = testing::random_matrix(n, d, 1900 + trial, -5.0, 5.0);
    std::vector<double> y(n);
    for (double& v : y) v = rng.uniform(-10.0, 10.0);
    const auto got = dispersion(x, y);
    const auto want = reference::dispersion(x, y);
    for (std::size_t k = 0; k < 16; ++k) check_close(got.values[k], want[k], 1e-10, got.names[k]);
  }
}

TEST_CASE("dispersion behaviour") {
  // 2 % of 100 points: one pair, so mean and median coincide.
  const Matrix x = testing::random_matrix(100, 2, 7, -5.0, 5.0);
  std::vector<double> y(100);
  for (std::size_t i = 0; i < 100; ++i) y[i] = static_cast<double>(i);
  const auto f = dispersion(x, y);
  const double pair = reference::euclid(x.row(0), x.row(1));
  const auto full = [&] {
    std::vector<double> d;
    for (std::size_t a = 0; a < 100; ++a)
      for (std::size_t b = a + 1; b < 100; ++b) d.push_back(reference::euclid(x.row(a), x.row(b)));
    return d;
  }();
  CHECK(*f.at("disp.ratio_mean_02") == doctest::Approx(pair / reference::mean(full)));
  CHECK(*f.at("disp.ratio_median_02") == doctest::Approx(pair / reference::median(full)));
  CHECK(*f.at("disp.diff_mean_02") == doctest::Approx(pair - reference::mean(full)));
  CHECK(*f.at("disp.diff_median_02") == doctest::Approx(pair - reference::median(full)));

  double uniform_mean = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix ux = testing::random_matrix(200, 2, 5000 + seed, -5.0, 5.0);
    Rng rng(seed);
    std::vector<double> uy(200);
    for (double& v : uy) v = rng.uniform();
    uniform_mean += *dispersion(ux, uy).at("disp.ratio_mean_25");
  }
  CHECK(std::fabs(uniform_mean / 100.0 - 1.0) < 0.1);

  const Sample s = draw_sample(make_problem(FunctionId::F1, 3, 1), 500, 2);
  const auto sphere = dispersion(s.x, s.y);
  for (const char* tag : {"02", "05", "10", "25"}) {
    CHECK(*sphere.at(std::string("disp.ratio_mean_") + tag) < 1.0);
    CHECK(*sphere.at(std::string("disp.ratio_median_") + tag) < 1.0);
  }
}

TEST_CASE("information content symbols and entropy") {
  CHECK(ic::symbols(std::vector<double>{2.0, -0.1, 0.3, -3.0}, 0.5) == std::vector<int>{1, 0, 0, -1});
  const std::vector<int> alt{1, -1, 1, -1, 1, -1, 1};
  // Six pairs, alternating (1,-1) and (-1,1): three each.
  const double expected = -2.0 * (0.5 * std::log(0.5) / std::log(6.0));
  CHECK(ic::entropy(alt) == doctest::Approx(expected));
  CHECK(ic::entropy(std::vector<int>{1, 1, 1, 1}) == 0.0);
  CHECK(ic::partial_information(std::vector<int>{1, 1, -1, 0, -1, 1}) == doctest::Approx(3.0 / 6.0));
  CHECK(ic::tour(column_matrix({0.0, 5.0, 1.0, 2.0})) == std::vector<std::size_t>{0, 2, 3, 1});
}

TEST_CASE("information content features") {
  const auto grid = default_eps_grid();
  const Matrix line = column_matrix({0, 1, 2, 3, 4, 5, 6, 7});
  const auto flat = info_content(line, std::vector<double>(8, 3.0), grid);
  CHECK(*flat.at("ic.h_max") == 0.0);
  CHECK(*flat.at("ic.m0") == 0.0);

  const auto mono = info_content(line, std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7}, grid);
  CHECK(*mono.at("ic.h_max") == 0.0);
  CHECK(*mono.at("ic.m0") == doctest::Approx(1.0 / 7.0));

  const auto zigzag = info_content(line, std::vector<double>{0, 1, 0, 1, 0, 1, 0, 1}, grid);
  // Slopes alternate +1/-1: six symbol pairs, three (1,-1) and three (-1,1).
  CHECK(*zigzag.at("ic.h_max") == doctest::Approx(std::log(2.0) / std::log(6.0)));
  CHECK(*zigzag.at("ic.m0") == 1.0);
  CHECK(*zigzag.at("ic.eps_s") == doctest::Approx(0.0).scale(1.0).epsilon(0.06));
}

TEST_CASE("fitness-distance correlation") {
  const auto a = fdc(column_matrix({0, 1, 2}), std::vector<double>{0, 1, 4});
  CHECK(*a.at("fdc.cor") == doctest::Approx(0.9608).epsilon(1e-4));
  Matrix x = testing::random_matrix(50, 3, 8, -5.0, 5.0);
  x(0, 0) = x(0, 1) = x(0, 2) = 0.0;
  std::vector<double> y(50);
  for (std::size_t i = 0; i < 50; ++i) y[i] = 3.0 * reference::euclid(x.row(i), x.row(0));
  CHECK(*fdc(x, y).at("fdc.cor") == doctest::Approx(1.0));
  CHECK_THROWS_CODE(fdc(column_matrix({0, 1}), std::vector<double>{0, 1}), Errc::SampleTooSmall);
}

TEST_CASE("PCA summary features") {
  Rng rng(9);
  Matrix iso(500, 5), aniso(500, 5);
  for (std::size_t i = 0; i < 500; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      iso(i, j) = rng.gaussian();
      aniso(i, j) = rng.gaussian() * (j == 0 ? 10.0 : 1.0);
    }
  const std::vector<double> y(500, 0.0);
  std::vector<double> y_var(500);
  for (double& v : y_var) v = rng.gaussian();
  CHECK(*pca_misc(iso, y_var).at("pca.cov_x.expl_var") > 0.8);
  CHECK(*pca_misc(aniso, y_var).at("pca.cov_x.expl_var_pc1") > 0.9);
  CHECK(*pca_misc(testing::random_matrix(50, 10, 1), std::vector<double>(y_var.begin(), y_var.begin() + 50)).at("basic.dim") == 10.0);
  // Constant y: the cov_x group stays defined.
  CHECK(pca_misc(iso, y).at("pca.cov_x.expl_var").has_value());
}

TEST_CASE("complete feature vector") {
  const Sample s = draw_sample(make_problem(FunctionId::F3, 3, 1), 750, 3);
  const auto f = feature_vector(s);
  CHECK(f.size() == 53);
  CHECK(f.names == feature_names());
  CHECK(f == feature_vector(s));
  std::size_t missing = 0;
  for (const auto& v : f.values) missing += v ? 0 : 1;
  CHECK(missing == 0);

  Sample flat = s;
  std::fill(flat.y.begin(), flat.y.end(), 4.0);
  const auto g = feature_vector(flat);
  CHECK(g.size() == 53);
  for (const auto& name : {"distr.skewness", "distr.kurtosis", "distr.number_of_peaks", "nbc.nn_nb.mean_ratio",
                           "nbc.nb_fitness.cor", "ic.eps_ratio", "meta.lin_simple.adj_r2"})
    CHECK_MESSAGE(!g.at(name).has_value(), name);
  CHECK(g.at("pca.cov_x.expl_var").has_value());
  CHECK(*g.at("basic.dim") == 3.0);
}
