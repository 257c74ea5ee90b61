#include "landscape/elafeat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "landscape/error.hpp"
#include "landscape/kernels.hpp"
#include "landscape/linalg.hpp"

namespace landscape {

namespace {

using kernels::Norm;

constexpr std::array<double, 4> kDispersionQuantiles = {0.02, 0.05, 0.10, 0.25};
constexpr std::array<const char*, 4> kDispersionTags = {"02", "05", "10", "25"};
constexpr std::size_t kHistogramBins = 32;
constexpr double kSettlingThreshold = 0.05;

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sample standard deviation (n - 1).
double sd(std::span<const double> v) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Spread too small relative to magnitude to be anything but round-off.
bool degenerate_spread(std::span<const double> v) {
  if (v.size() < 2) return true;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double scale = std::max(std::fabs(*lo), std::fabs(*hi));
  return *hi - *lo <= 1e-12 * scale || *hi == *lo;
}

FeatureValue pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2 || degenerate_spread(a) || degenerate_spread(b)) return std::nullopt;
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

FeatureValue ratio(double num, double den) {
  if (!std::isfinite(num) || !std::isfinite(den) || den == 0.0) return std::nullopt;
  return num / den;
}

FeatureValue finite_or_missing(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

void check_inputs(const Matrix& x, std::span<const double> y, std::size_t min_n, const char* group) {
  if (x.rows() != y.size()) throw Error(Errc::DimensionMismatch, std::string(group) + ": design and fitness lengths differ");
  if (y.size() < min_n)
    throw Error(Errc::SampleTooSmall, std::string(group) + " needs at least " + std::to_string(min_n) + " points");
  for (double v : y)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteInput, std::string(group) + ": non-finite fitness");
}

// All pairwise Euclidean distances, i < j, row-major over i.
std::vector<double> pairwise_distances(const Matrix& x) {
  const kernels::PointSet points(x);
  const std::size_t n = x.rows();
  std::vector<double> out;
  out.reserve(n * (n - 1) / 2);
  std::vector<double> buf(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    kernels::lp_distances(kernels::active_isa(), x.row(i), points, i + 1, n, Norm::L2, buf);
    out.insert(out.end(), buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n - i - 1));
  }
  return out;
}

// Indices sorted by fitness, ties by index.
std::vector<std::size_t> rank_by_fitness(std::span<const double> y) {
  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  return order;
}

struct FitResult {
  FeatureValue adj_r2;
  std::vector<double> coef;  // empty when the fit is rank deficient
};

FitResult least_squares(const Eigen::MatrixXd& design, std::span<const double> y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  const Eigen::Index cols = design.cols();
  FitResult out;
  if (n <= cols) return out;
  Eigen::VectorXd target(n);
  for (Eigen::Index i = 0; i < n; ++i) target(i) = y[static_cast<std::size_t>(i)];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < cols) return out;
  const Eigen::VectorXd beta = qr.solve(target);
  out.coef.assign(beta.data(), beta.data() + cols);

  if (degenerate_spread(y)) return out;
  const double ybar = target.mean();
  const double tss = (target.array() - ybar).square().sum();
  const double rss = (target - design * beta).squaredNorm();
  const double p = static_cast<double>(cols - 1);
  const double dn = static_cast<double>(n);
  if (!(tss > 0.0) || dn - p - 1.0 <= 0.0) return out;
  out.adj_r2 = 1.0 - (rss / tss) * (dn - 1.0) / (dn - p - 1.0);
  return out;
}

enum class Terms { Linear, LinearInteract, Quadratic, QuadraticInteract };

Eigen::MatrixXd design_matrix(const Matrix& x, Terms terms) {
  const std::size_t n = x.rows(), d = x.cols();
  std::size_t cols = 1 + d;
  if (terms == Terms::LinearInteract) cols += d * (d - 1) / 2;
  if (terms == Terms::Quadratic) cols += d;
  if (terms == Terms::QuadraticInteract) cols += d * (d + 1) / 2;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < n; ++r) {
    Eigen::Index c = 0;
    const auto ri = static_cast<Eigen::Index>(r);
    m(ri, c++) = 1.0;
    for (std::size_t j = 0; j < d; ++j) m(ri, c++) = x(r, j);
    if (terms == Terms::Quadratic)
      for (std::size_t j = 0; j < d; ++j) m(ri, c++) = x(r, j) * x(r, j);
    if (terms == Terms::LinearInteract || terms == Terms::QuadraticInteract) {
      const std::size_t start = terms == Terms::QuadraticInteract ? 0 : 1;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + start; j < d; ++j) m(ri, c++) = x(r, i) * x(r, j);
    }
  }
  return m;
}

FeatureVector make_group(std::vector<std::string> names, std::vector<FeatureValue> values) {
  return FeatureVector{std::move(names), std::move(values)};
}

std::vector<std::string> meta_names() {
  return {"meta.lin_simple.adj_r2",   "meta.lin_simple.intercept", "meta.lin_simple.coef_min_by_max",
          "meta.lin_simple.coef_min", "meta.lin_simple.coef_max",  "meta.lin_w_interact.adj_r2",
          "meta.quad_simple.adj_r2",  "meta.quad_simple.cond",     "meta.quad_w_interact.adj_r2"};
}

std::vector<std::string> distr_names() {
  return {"distr.skewness", "distr.kurtosis", "distr.number_of_peaks"};
}

std::vector<std::string> nbc_names() {
  return {"nbc.nn_nb.sd_ratio", "nbc.nn_nb.mean_ratio", "nbc.nn_nb.cor", "nbc.dist_ratio.coeff_var",
          "nbc.nb_fitness.cor"};
}

std::vector<std::string> dispersion_names() {
  std::vector<std::string> names;
  for (const char* tag : kDispersionTags)
    for (const char* stat : {"ratio_mean", "ratio_median", "diff_mean", "diff_median"})
      names.push_back(std::string("disp.") + stat + "_" + tag);
  return names;
}

std::vector<std::string> ic_names() { return {"ic.h_max", "ic.eps_s", "ic.eps_max", "ic.m0", "ic.eps_ratio"}; }

std::vector<std::string> fdc_names() {
  return {"fdc.cor", "fdc.dist_mean", "fdc.dist_sd", "fdc.dist_max", "fdc.fit_gap_mean", "fdc.fit_sd"};
}

std::vector<std::string> pca_names() {
  return {"pca.cov_x.expl_var",     "pca.cor_x.expl_var",     "pca.cov_init.expl_var",
          "pca.cor_init.expl_var",  "pca.cov_x.expl_var_pc1", "pca.cor_x.expl_var_pc1",
          "pca.cov_init.expl_var_pc1", "pca.cor_init.expl_var_pc1", "basic.dim"};
}

FeatureVector all_missing(std::vector<std::string> names) {
  std::vector<FeatureValue> values(names.size());
  return make_group(std::move(names), std::move(values));
}

struct ExplainedVariance {
  FeatureValue fraction_90;
  FeatureValue pc1_share;
};

ExplainedVariance explained_variance(const Matrix& cov) {
  double total = 0.0;
  for (std::size_t i = 0; i < cov.rows(); ++i) total += cov(i, i);
  if (!(total > 0.0) || !std::isfinite(total)) return {};
  const auto eig = linalg::symmetric_eigen(cov);
  double cum = 0.0;
  std::size_t needed = eig.values.size();
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    cum += std::max(eig.values[k], 0.0);
    if (cum / total >= 0.9 - 1e-12) {
      needed = k + 1;
      break;
    }
  }
  return {static_cast<double>(needed) / static_cast<double>(eig.values.size()), std::max(eig.values[0], 0.0) / total};
}

std::optional<Matrix> correlation_from_covariance(const Matrix& cov) {
  const std::size_t d = cov.rows();
  Matrix cor(d, d);
  for (std::size_t i = 0; i < d; ++i)
    if (!(cov(i, i) > 0.0)) return std::nullopt;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) cor(i, j) = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
  return cor;
}

bool has_constant_column(const Matrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (degenerate_spread(m.column(c))) return true;
  return false;
}

}  // namespace

void FeatureVector::append(const FeatureVector& other) {
  names.insert(names.end(), other.names.begin(), other.names.end());
  values.insert(values.end(), other.values.begin(), other.values.end());
}

const FeatureValue& FeatureVector::at(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw Error(Errc::InvalidArgument, "no feature named '" + std::string(name) + "'");
}

const std::vector<std::string>& feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> all;
    for (const auto& group : {meta_names(), distr_names(), nbc_names(), dispersion_names(), ic_names(), fdc_names(),
                              pca_names()})
      all.insert(all.end(), group.begin(), group.end());
    return all;
  }();
  return names;
}

std::vector<double> default_eps_grid() {
  std::vector<double> grid{0.0};
  for (int i = 0; i < 200; ++i) grid.push_back(std::pow(10.0, -5.0 + 10.0 * i / 199.0));
  return grid;
}

FeatureVector ela_meta(const Matrix& x, std::span<const double> y) {
  const std::size_t d = x.cols();
  check_inputs(x, y, 2 * d + 2, "ela_meta");
  std::vector<FeatureValue> v(9);

  const FitResult lin = least_squares(design_matrix(x, Terms::Linear), y);
  v[0] = lin.adj_r2;
  if (!lin.coef.empty()) {
    v[1] = lin.coef[0];
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t j = 1; j < lin.coef.size(); ++j) {
      lo = std::min(lo, std::fabs(lin.coef[j]));
      hi = std::max(hi, std::fabs(lin.coef[j]));
    }
    v[2] = ratio(lo, hi);
    v[3] = lo;
    v[4] = hi;
  }
  v[5] = least_squares(design_matrix(x, Terms::LinearInteract), y).adj_r2;

  const FitResult quad = least_squares(design_matrix(x, Terms::Quadratic), y);
  v[6] = quad.adj_r2;
  if (!quad.coef.empty()) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t j = 1 + d; j < quad.coef.size(); ++j) {
      lo = std::min(lo, std::fabs(quad.coef[j]));
      hi = std::max(hi, std::fabs(quad.coef[j]));
    }
    v[7] = ratio(hi, lo);
  }
  v[8] = least_squares(design_matrix(x, Terms::QuadraticInteract), y).adj_r2;
  return make_group(meta_names(), std::move(v));
}

FeatureVector ela_distr(std::span<const double> y) {
  if (y.size() < 4) throw Error(Errc::SampleTooSmall, "ela_distr needs at least 4 points");
  for (double v : y)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteInput, "ela_distr: non-finite fitness");
  std::vector<FeatureValue> v(3);
  if (degenerate_spread(y)) return make_group(distr_names(), std::move(v));

  const double m = mean(y);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double yi : y) {
    const double dev = yi - m;
    m2 += dev * dev;
    m3 += dev * dev * dev;
    m4 += dev * dev * dev * dev;
  }
  const double n = static_cast<double>(y.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  v[0] = m3 / std::pow(m2, 1.5);
  v[1] = m4 / (m2 * m2) - 3.0;

  const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
  const double lo = *lo_it, width = (*hi_it - lo) / static_cast<double>(kHistogramBins);
  std::array<double, kHistogramBins> counts{};
  for (double yi : y) {
    auto bin = static_cast<std::size_t>((yi - lo) / width);
    counts[std::min(bin, kHistogramBins - 1)] += 1.0;
  }
  std::array<double, kHistogramBins> smooth{};
  for (std::size_t b = 0; b < kHistogramBins; ++b) {
    const std::size_t from = b == 0 ? 0 : b - 1;
    const std::size_t to = std::min(b + 1, kHistogramBins - 1);
    double s = 0.0;
    for (std::size_t k = from; k <= to; ++k) s += counts[k];
    smooth[b] = s / static_cast<double>(to - from + 1);
  }
  // A peak is a plateau strictly above both neighbours; the edges count as -inf.
  int peaks = 0;
  for (std::size_t b = 0; b < kHistogramBins;) {
    std::size_t e = b;
    while (e + 1 < kHistogramBins && smooth[e + 1] == smooth[b]) ++e;
    const bool left_lower = b == 0 || smooth[b - 1] < smooth[b];
    const bool right_lower = e + 1 == kHistogramBins || smooth[e + 1] < smooth[b];
    if (left_lower && right_lower) ++peaks;
    b = e + 1;
  }
  v[2] = static_cast<double>(peaks);
  return make_group(distr_names(), std::move(v));
}

FeatureVector nbc(const Matrix& x, std::span<const double> y) {
  check_inputs(x, y, 3, "nbc");
  const std::size_t n = y.size();
  const kernels::PointSet points(x);
  std::vector<double> dist(n);
  std::vector<double> nn_all(n), nb_all(n, -1.0);
  std::vector<double> indegree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    kernels::lp_distances(x.row(i), points, Norm::L2, dist);
    double nn = std::numeric_limits<double>::infinity();
    double nb = std::numeric_limits<double>::infinity();
    std::size_t target = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      nn = std::min(nn, dist[j]);
      if (y[j] < y[i] && dist[j] < nb) {
        nb = dist[j];
        target = j;
      }
    }
    nn_all[i] = nn;
    if (target < n) {
      nb_all[i] = nb;
      indegree[target] += 1.0;
    }
  }

  std::vector<double> nn, nb, ratios;
  bool ratios_defined = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (nb_all[i] < 0.0) continue;
    nn.push_back(nn_all[i]);
    nb.push_back(nb_all[i]);
    if (nn_all[i] > 0.0) ratios.push_back(nb_all[i] / nn_all[i]);
    else ratios_defined = false;
  }

  std::vector<FeatureValue> v(5);
  if (nn.size() >= 2) {
    v[0] = ratio(sd(nn), sd(nb));
    v[2] = pearson(nn, nb);
  }
  if (!nn.empty()) v[1] = ratio(mean(nn), mean(nb));
  if (ratios_defined && ratios.size() >= 2) v[3] = ratio(sd(ratios), mean(ratios));
  v[4] = pearson(y, indegree);
  return make_group(nbc_names(), std::move(v));
}

FeatureVector dispersion(const Matrix& x, std::span<const double> y) {
  check_inputs(x, y, 2, "dispersion");
  const std::size_t n = y.size();
  const auto full = pairwise_distances(x);
  const double full_mean = mean(full);
  const double full_median = median(full);
  const auto order = rank_by_fitness(y);

  std::vector<FeatureValue> v(16);
  for (std::size_t q = 0; q < kDispersionQuantiles.size(); ++q) {
    const auto size = static_cast<std::size_t>(std::ceil(kDispersionQuantiles[q] * static_cast<double>(n) - 1e-9));
    if (size < 2) continue;
    Matrix subset(size, x.cols());
    for (std::size_t r = 0; r < size; ++r)
      std::copy(x.row(order[r]).begin(), x.row(order[r]).end(), subset.row(r).begin());
    const auto dists = pairwise_distances(subset);
    const double sub_mean = mean(dists);
    const double sub_median = median(dists);
    v[4 * q + 0] = ratio(sub_mean, full_mean);
    v[4 * q + 1] = ratio(sub_median, full_median);
    v[4 * q + 2] = sub_mean - full_mean;
    v[4 * q + 3] = sub_median - full_median;
  }
  return make_group(dispersion_names(), std::move(v));
}

namespace ic {

std::vector<std::size_t> tour(const Matrix& x) {
  const std::size_t n = x.rows();
  const kernels::PointSet points(x);
  std::vector<std::size_t> path{0};
  std::vector<bool> visited(n, false);
  if (n == 0) return {};
  visited[0] = true;
  std::vector<double> dist(n);
  for (std::size_t step = 1; step < n; ++step) {
    kernels::lp_distances(x.row(path.back()), points, Norm::L2, dist);
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!visited[j] && (best == n || dist[j] < dist[best])) best = j;
    visited[best] = true;
    path.push_back(best);
  }
  return path;
}

std::vector<int> symbols(std::span<const double> slopes, double eps) {
  std::vector<int> out(slopes.size());
  for (std::size_t t = 0; t < slopes.size(); ++t) out[t] = slopes[t] > eps ? 1 : (slopes[t] < -eps ? -1 : 0);
  return out;
}

double entropy(std::span<const int> s) {
  if (s.size() < 2) return 0.0;
  std::array<double, 9> counts{};
  for (std::size_t t = 0; t + 1 < s.size(); ++t)
    if (s[t] != s[t + 1]) counts[static_cast<std::size_t>((s[t] + 1) * 3 + (s[t + 1] + 1))] += 1.0;
  const double pairs = static_cast<double>(s.size() - 1);
  double h = 0.0;
  for (double c : counts)
    if (c > 0) {
      const double p = c / pairs;
      h -= p * std::log(p) / std::log(6.0);
    }
  return h;
}

double partial_information(std::span<const int> s) {
  if (s.empty()) return 0.0;
  std::size_t mu = 0;
  int last = 0;
  for (int sym : s)
    if (sym != 0 && sym != last) {
      ++mu;
      last = sym;
    }
  return static_cast<double>(mu) / static_cast<double>(s.size());
}

}  // namespace ic

FeatureVector info_content(const Matrix& x, std::span<const double> y, std::span<const double> eps_grid) {
  check_inputs(x, y, 3, "info_content");
  if (eps_grid.empty()) throw Error(Errc::InvalidArgument, "info_content: empty epsilon grid");
  std::vector<double> grid(eps_grid.begin(), eps_grid.end());
  std::sort(grid.begin(), grid.end());

  const auto path = ic::tour(x);
  std::vector<double> slopes(path.size() - 1);
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    const auto a = x.row(path[t]), b = x.row(path[t + 1]);
    double d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) d2 += (b[j] - a[j]) * (b[j] - a[j]);
    const double dy = y[path[t + 1]] - y[path[t]];
    const double dist = std::sqrt(d2);
    if (dist > 0.0) slopes[t] = dy / dist;
    else slopes[t] = dy == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), dy);
  }

  double h_max = -1.0, eps_max = 0.0;
  FeatureValue eps_s, eps_ratio;
  const double m0 = ic::partial_information(ic::symbols(slopes, 0.0));
  for (double eps : grid) {
    const auto s = ic::symbols(slopes, eps);
    const double h = ic::entropy(s);
    if (h > h_max) {
      h_max = h;
      eps_max = eps;
    }
    if (eps > 0.0 && !eps_s && h < kSettlingThreshold) eps_s = std::log10(eps);
    if (eps > 0.0 && !eps_ratio && ic::partial_information(s) < 0.5 * m0) eps_ratio = std::log10(eps);
  }
  std::vector<FeatureValue> v{h_max, eps_s, eps_max, m0, eps_ratio};
  return make_group(ic_names(), std::move(v));
}

FeatureVector fdc(const Matrix& x, std::span<const double> y) {
  check_inputs(x, y, 3, "fdc");
  const std::size_t n = y.size();
  const std::size_t best = rank_by_fitness(y).front();
  const kernels::PointSet points(x);
  std::vector<double> d(n);
  kernels::lp_distances(x.row(best), points, Norm::L2, d);
  std::vector<double> gap(n);
  for (std::size_t i = 0; i < n; ++i) gap[i] = y[i] - y[best];

  std::vector<FeatureValue> v(6);
  v[0] = pearson(d, y);
  v[1] = mean(d);
  v[2] = finite_or_missing(sd(d));
  v[3] = *std::max_element(d.begin(), d.end());
  v[4] = mean(gap);
  v[5] = finite_or_missing(sd(y));
  return make_group(fdc_names(), std::move(v));
}

FeatureVector pca_misc(const Matrix& x, std::span<const double> y) {
  const std::size_t d = x.cols();
  check_inputs(x, y, d + 2, "pca_misc");
  Matrix joined(x.rows(), d + 1);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) joined(i, j) = x(i, j);
    joined(i, d) = y[i];
  }
  const Matrix cov_x = linalg::covariance(x);
  const Matrix cov_init = linalg::covariance(joined);

  std::array<ExplainedVariance, 4> ev{};
  ev[0] = explained_variance(cov_x);
  if (!has_constant_column(x))
    if (auto cor = correlation_from_covariance(cov_x)) ev[1] = explained_variance(*cor);
  ev[2] = explained_variance(cov_init);
  if (!has_constant_column(joined))
    if (auto cor = correlation_from_covariance(cov_init)) ev[3] = explained_variance(*cor);

  std::vector<FeatureValue> v(9);
  for (std::size_t k = 0; k < 4; ++k) {
    v[k] = ev[k].fraction_90;
    v[4 + k] = ev[k].pc1_share;
  }
  v[8] = static_cast<double>(d);
  return make_group(pca_names(), std::move(v));
}

FeatureVector feature_vector(const Sample& sample) {
  const Matrix& x = sample.x;
  std::span<const double> y = sample.y;
  FeatureVector out;
  const auto guarded = [&](auto&& compute, std::vector<std::string> names) {
    try {
      out.append(compute());
    } catch (const Error&) {
      out.append(all_missing(std::move(names)));
    }
  };
  guarded([&] { return ela_meta(x, y); }, meta_names());
  guarded([&] { return ela_distr(y); }, distr_names());
  guarded([&] { return nbc(x, y); }, nbc_names());
  guarded([&] { return dispersion(x, y); }, dispersion_names());
  const auto grid = default_eps_grid();
  guarded([&] { return info_content(x, y, grid); }, ic_names());
  guarded([&] { return fdc(x, y); }, fdc_names());
  guarded([&] { return pca_misc(x, y); }, pca_names());
  return out;
}

}  // namespace landscape
