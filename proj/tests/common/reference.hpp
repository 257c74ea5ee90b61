#pragma once

// Straightforward O(n^2) reference implementations used as test oracles.
// They share no code with the library beyond the Matrix type.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "landscape/kernels.hpp"
#include "landscape/matrix.hpp"

namespace reference {

using Opt = std::optional<double>;

inline double euclid(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sd(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline bool constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

inline Opt pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || constant(a) || constant(b)) return std::nullopt;
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Nearest-better clustering features in library order:
/// sd_ratio, mean_ratio, cor(nn, nb), coeff_var(nb/nn), cor(y, in-degree).
inline std::vector<Opt> nbc(const landscape::Matrix& x, const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> nn, nb, ratios, indegree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double best_nn = INFINITY, best_nb = INFINITY;
    std::size_t target = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = euclid(x.row(i), x.row(j));
      best_nn = std::min(best_nn, d);
      if (y[j] < y[i] && d < best_nb) {
        best_nb = d;
        target = j;
      }
    }
    if (target == n) continue;
    indegree[target] += 1.0;
    nn.push_back(best_nn);
    nb.push_back(best_nb);
    ratios.push_back(best_nb / best_nn);
  }
  std::vector<Opt> out(5);
  if (nn.size() >= 2) {
    if (sd(nb) > 0) out[0] = sd(nn) / sd(nb);
    out[2] = pearson(nn, nb);
  }
  if (!nn.empty()) out[1] = mean(nn) / mean(nb);
  if (ratios.size() >= 2) out[3] = sd(ratios) / mean(ratios);
  out[4] = pearson(y, indegree);
  return out;
}

/// Dispersion features: for q in {2,5,10,25}% the best ceil(q n) points;
/// ratio_mean, ratio_median, diff_mean, diff_median of pairwise distances.
inline std::vector<Opt> dispersion(const landscape::Matrix& x, const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < n; ++i) ranked.emplace_back(y[i], i);
  std::sort(ranked.begin(), ranked.end());
  auto pair_dists = [&](std::size_t count) {
    std::vector<double> d;
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = a + 1; b < count; ++b) d.push_back(euclid(x.row(ranked[a].second), x.row(ranked[b].second)));
    return d;
  };
  const auto full = pair_dists(n);
  std::vector<Opt> out;
  for (int pct : {2, 5, 10, 25}) {
    const auto size = static_cast<std::size_t>((static_cast<std::size_t>(pct) * n + 99) / 100);
    if (size < 2) {
      out.insert(out.end(), 4, std::nullopt);
      continue;
    }
    const auto sub = pair_dists(size);
    out.push_back(mean(sub) / mean(full));
    out.push_back(median(sub) / median(full));
    out.push_back(mean(sub) - mean(full));
    out.push_back(median(sub) - median(full));
  }
  return out;
}

inline double lp_distance(std::span<const double> a, std::span<const double> b, landscape::kernels::Norm p) {
  using landscape::kernels::Norm;
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = std::fabs(a[j] - b[j]);
    if (p == Norm::L1) acc += diff;
    else if (p == Norm::L2) acc += diff * diff;
    else acc = std::max(acc, diff);
  }
  return p == Norm::L2 ? std::sqrt(acc) : acc;
}

/// All-pairs sort: self first, then others by (distance, index); any entry
/// farther than delta_max repeats the entry before it.
inline std::vector<std::vector<std::size_t>> knn_graph(const landscape::Matrix& x, std::size_t k,
                                                       landscape::kernels::Norm p, double delta_max) {
  const std::size_t n = x.rows();
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) all.emplace_back(lp_distance(x.row(i), x.row(j), p), j);
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> row{i};
    for (std::size_t t = 0; t + 1 < k; ++t) row.push_back(all[t].first > delta_max ? row.back() : all[t].second);
    out.push_back(row);
  }
  return out;
}

}  // namespace reference
