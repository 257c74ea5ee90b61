#include "landscape/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "landscape/error.hpp"
#include "landscape/kernels.hpp"

namespace landscape {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t property_slot(Property p) { return static_cast<std::size_t>(p); }

std::vector<std::size_t> class_column(std::span<const PropertyLabels> labels, Property p) {
  std::vector<std::size_t> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = class_index(labels[i], p);
  return out;
}

std::size_t argmax_first(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

PropertyClassifier fit_knn(const Matrix& rows, std::vector<std::size_t> y, std::size_t classes) {
  PropertyClassifier c;
  c.classes = classes;
  c.train_rows = rows;
  c.train_y = std::move(y);
  return c;
}

PropertyClassifier fit_logistic(const Matrix& rows, std::span<const std::size_t> y, std::size_t classes,
                                const BaseConfig& config) {
  const std::size_t n = rows.rows(), f = rows.cols();
  PropertyClassifier c;
  c.classes = classes;
  c.weights = Matrix(classes, f + 1, 0.0);
  Matrix grad(classes, f + 1);
  std::vector<double> logits(classes), prob(classes);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int it = 0; it < config.iterations; ++it) {
    std::fill(grad.data().begin(), grad.data().end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = rows.row(i);
      for (std::size_t k = 0; k < classes; ++k) {
        const auto w = c.weights.row(k);
        double z = w[f];
        for (std::size_t j = 0; j < f; ++j) z += w[j] * x[j];
        logits[k] = z;
      }
      const double top = *std::max_element(logits.begin(), logits.end());
      double norm = 0.0;
      for (std::size_t k = 0; k < classes; ++k) norm += prob[k] = std::exp(logits[k] - top);
      for (std::size_t k = 0; k < classes; ++k) {
        const double err = prob[k] / norm - (y[i] == k ? 1.0 : 0.0);
        auto g = grad.row(k);
        for (std::size_t j = 0; j < f; ++j) g[j] += err * x[j];
        g[f] += err;
      }
    }
    for (std::size_t k = 0; k < classes; ++k) {
      auto w = c.weights.row(k);
      const auto g = grad.row(k);
      for (std::size_t j = 0; j <= f; ++j) {
        const double penalty = j < f ? config.l2 * w[j] : 0.0;
        w[j] -= config.learning_rate * (g[j] * inv_n + penalty);
      }
    }
  }
  return c;
}

PropertyClassifier fit_property(const BRModel& model, const Matrix& standardized, std::span<const PropertyLabels> labels,
                                Property p) {
  auto y = class_column(labels, p);
  const std::set<std::size_t> present(y.begin(), y.end());
  if (present.size() < 2)
    throw Error(Errc::DegenerateLabels,
                "property '" + std::string(property_name(p)) + "' has a single class in the training rows");
  if (model.kind == BaseKind::Knn) return fit_knn(standardized, std::move(y), class_count(p));
  return fit_logistic(standardized, y, class_count(p), model.config);
}

std::vector<std::size_t> predict_knn(const PropertyClassifier& c, std::size_t k, const Matrix& rows) {
  const kernels::PointSet points(c.train_rows);
  const std::size_t n = c.train_rows.rows();
  const std::size_t kk = std::min(k, n);
  std::vector<double> dist(n);
  std::vector<std::size_t> order(n), out(rows.rows());
  std::vector<double> votes(c.classes);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    kernels::lp_distances(rows.row(r), points, kernels::Norm::L2, dist);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk), order.end(),
                      [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });
    std::fill(votes.begin(), votes.end(), 0.0);
    for (std::size_t t = 0; t < kk; ++t) votes[c.train_y[order[t]]] += 1.0;
    out[r] = argmax_first(votes);
  }
  return out;
}

std::vector<std::size_t> predict_logistic(const PropertyClassifier& c, const Matrix& rows) {
  const std::size_t f = rows.cols();
  std::vector<std::size_t> out(rows.rows());
  std::vector<double> logits(c.classes);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto x = rows.row(r);
    for (std::size_t k = 0; k < c.classes; ++k) {
      const auto w = c.weights.row(k);
      double z = w[f];
      for (std::size_t j = 0; j < f; ++j) z += w[j] * x[j];
      logits[k] = z;
    }
    out[r] = argmax_first(logits);
  }
  return out;
}

std::string format_score(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

}  // namespace

std::vector<double> flatten_features(const FeatureVector& features) {
  std::vector<double> out(features.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = features.values[i] ? *features.values[i] : kNaN;
  return out;
}

std::vector<double> flatten_map(const FitnessMap& map) {
  const std::size_t res = map.resolution();
  std::vector<double> out;
  out.reserve(map.channels() * kMapSummaryWidth);
  for (std::size_t ch = 0; ch < map.channels(); ++ch) {
    double count = 0.0, sum = 0.0, sq = 0.0, lo = 1.0, hi = 1.0;
    std::vector<double> block_sum(kDownsampleGrid * kDownsampleGrid, 0.0);
    std::vector<double> block_hits(kDownsampleGrid * kDownsampleGrid, 0.0);
    for (std::size_t r = 0; r < res; ++r)
      for (std::size_t c = 0; c < res; ++c) {
        if (!map.occupied(r, c, ch)) continue;
        const double v = map.value(r, c, ch);
        if (count == 0.0) lo = hi = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        count += 1.0;
        sum += v;
        sq += v * v;
        const std::size_t cell = (r * kDownsampleGrid / res) * kDownsampleGrid + c * kDownsampleGrid / res;
        block_sum[cell] += v;
        block_hits[cell] += 1.0;
      }
    const double mean = count > 0 ? sum / count : 1.0;
    const double var = count > 0 ? std::max(0.0, sq / count - mean * mean) : 0.0;
    out.insert(out.end(), {count, mean, std::sqrt(var), lo, hi});
    for (std::size_t b = 0; b < block_sum.size(); ++b)
      out.push_back(block_hits[b] > 0 ? block_sum[b] / block_hits[b] : 1.0);
  }
  return out;
}

std::vector<double> flatten_cloud(const Matrix& embedded) {
  const std::size_t n = embedded.rows(), w = embedded.cols();
  std::vector<double> out(2 * w, 0.0);
  if (n == 0) return out;
  for (std::size_t c = 0; c < w; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += embedded(r, c);
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) sq += (embedded(r, c) - mean) * (embedded(r, c) - mean);
    out[c] = mean;
    out[w + c] = std::sqrt(sq / static_cast<double>(n));
  }
  return out;
}

std::string_view base_kind_name(BaseKind k) { return k == BaseKind::Knn ? "knn" : "logistic"; }

BaseKind parse_base_kind(std::string_view name) {
  if (name == "knn") return BaseKind::Knn;
  if (name == "logistic") return BaseKind::Logistic;
  throw Error(Errc::InvalidArgument, "unknown base classifier '" + std::string(name) + "'");
}

std::string describe(BaseKind kind, const BaseConfig& config) {
  std::ostringstream s;
  if (kind == BaseKind::Knn) s << "knn(k=" << config.k << ")";
  else s << "logistic(l2=" << config.l2 << ", lr=" << config.learning_rate << ", iter=" << config.iterations << ")";
  return s.str();
}

Standardizer Standardizer::fit(const Matrix& rows) {
  Standardizer s;
  const std::size_t n = rows.rows(), f = rows.cols();
  s.mean.assign(f, 0.0);
  s.sd.assign(f, 1.0);
  if (n == 0) return s;
  for (std::size_t c = 0; c < f; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += rows(r, c);
    s.mean[c] = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t r = 0; r < n; ++r) sq += (rows(r, c) - s.mean[c]) * (rows(r, c) - s.mean[c]);
    const double sd = std::sqrt(sq / static_cast<double>(n));
    s.sd[c] = sd > 0.0 && std::isfinite(sd) ? sd : 1.0;
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& rows) const {
  if (rows.cols() != mean.size()) throw Error(Errc::DimensionMismatch, "row arity differs from standardizer");
  Matrix out(rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t c = 0; c < rows.cols(); ++c) out(r, c) = (rows(r, c) - mean[c]) / sd[c];
  return out;
}

BRModel train_br(const Matrix& rows, std::span<const PropertyLabels> labels, BaseKind kind, const BaseConfig& config) {
  if (rows.rows() != labels.size()) throw Error(Errc::DimensionMismatch, "row count differs from label count");
  for (double v : rows.data())
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteInput, "training rows contain non-finite values");
  if (kind == BaseKind::Knn && config.k == 0) throw Error(Errc::InvalidArgument, "knn needs k >= 1");
  BRModel model;
  model.kind = kind;
  model.config = config;
  model.arity = rows.cols();
  model.standardizer = Standardizer::fit(rows);
  const Matrix standardized = model.standardizer.apply(rows);
  for (Property p : kProperties) model.classifiers[property_slot(p)] = fit_property(model, standardized, labels, p);
  return model;
}

void retrain_property(BRModel& model, Property property, const Matrix& rows, std::span<const PropertyLabels> labels) {
  if (rows.cols() != model.arity) throw Error(Errc::DimensionMismatch, "row arity differs from the trained model");
  if (rows.rows() != labels.size()) throw Error(Errc::DimensionMismatch, "row count differs from label count");
  model.classifiers[property_slot(property)] = fit_property(model, model.standardizer.apply(rows), labels, property);
}

std::vector<std::size_t> predict_property(const BRModel& model, Property property, const Matrix& rows) {
  if (rows.cols() != model.arity)
    throw Error(Errc::DimensionMismatch, "row arity " + std::to_string(rows.cols()) + " differs from trained arity " +
                                             std::to_string(model.arity));
  const Matrix standardized = model.standardizer.apply(rows);
  const auto& c = model.classifiers[property_slot(property)];
  return model.kind == BaseKind::Knn ? predict_knn(c, model.config.k, standardized) : predict_logistic(c, standardized);
}

std::vector<PropertyLabels> predict(const BRModel& model, const Matrix& rows) {
  const auto m = predict_property(model, Property::Multimodality, rows);
  const auto g = predict_property(model, Property::GlobalStructure, rows);
  const auto f = predict_property(model, Property::Funnel, rows);
  std::vector<PropertyLabels> out(rows.rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = labels_from_indices(m[i], g[i], f[i]);
  return out;
}

ConfusionMatrix confusion(std::span<const std::size_t> pred, std::span<const std::size_t> truth, std::size_t classes) {
  if (pred.size() != truth.size()) throw Error(Errc::DimensionMismatch, "prediction and truth lengths differ");
  ConfusionMatrix m(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] >= classes || truth[i] >= classes) throw Error(Errc::InvalidArgument, "class index out of range");
    ++m[truth[i]][pred[i]];
  }
  return m;
}

std::vector<double> per_class_f1(std::span<const std::size_t> pred, std::span<const std::size_t> truth,
                                 std::size_t classes) {
  const auto m = confusion(pred, truth, classes);
  std::vector<double> f1(classes, kNaN);
  for (std::size_t c = 0; c < classes; ++c) {
    std::size_t tp = m[c][c], truth_count = 0, pred_count = 0;
    for (std::size_t k = 0; k < classes; ++k) {
      truth_count += m[c][k];
      pred_count += m[k][c];
    }
    if (truth_count == 0) continue;
    f1[c] = tp == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(truth_count + pred_count);
  }
  return f1;
}

double macro_f1(std::span<const std::size_t> pred, std::span<const std::size_t> truth, std::size_t classes) {
  if (pred.size() != truth.size()) throw Error(Errc::DimensionMismatch, "prediction and truth lengths differ");
  if (pred.empty()) throw Error(Errc::InvalidArgument, "macro-F1 of an empty label vector");
  const auto f1 = per_class_f1(pred, truth, classes);
  double sum = 0.0;
  std::size_t present = 0;
  for (double v : f1)
    if (!std::isnan(v)) {
      sum += v;
      ++present;
    }
  return sum / static_cast<double>(present);
}

double macro_f1(std::span<const PropertyLabels> pred, std::span<const PropertyLabels> truth, Property property) {
  if (pred.size() != truth.size()) throw Error(Errc::DimensionMismatch, "prediction and truth lengths differ");
  return macro_f1(class_column(pred, property), class_column(truth, property), class_count(property));
}

double MetricsReport::score(Property property, int dim) const {
  for (const auto& r : rows)
    if (r.property == property && r.dim == dim) return r.macro_f1;
  throw Error(Errc::InvalidArgument, "no score for that property and dimension");
}

std::string MetricsReport::to_csv() const {
  std::ostringstream out;
  out << "representation,classifier,property,dim,macro_f1\n";
  for (const auto& r : rows)
    out << representation << ',' << '"' << selected << '"' << ',' << property_name(r.property) << ','
        << (r.dim == 0 ? std::string("all") : std::to_string(r.dim)) << ',' << format_score(r.macro_f1) << '\n';
  return out.str();
}

std::string MetricsReport::to_table() const {
  std::ostringstream out;
  out << "representation: " << representation << "\nclassifier:     " << selected
      << "\nvalidation:     " << format_score(validation_score) << "\n\n";
  out << std::left << std::setw(18) << "property" << std::setw(6) << "dim" << "macro-F1\n";
  for (Property p : kProperties) {
    std::vector<int> order = dims;
    order.push_back(0);
    for (int d : order) {
      out << std::left << std::setw(18) << property_name(p) << std::setw(6)
          << (d == 0 ? std::string("all") : std::to_string(d)) << format_score(score(p, d)) << '\n';
    }
  }
  return out.str();
}

std::vector<BaseConfig> config_grid(BaseKind kind) {
  std::vector<BaseConfig> grid;
  if (kind == BaseKind::Knn) {
    for (std::size_t k : {1, 5, 11}) {
      BaseConfig c;
      c.k = k;
      grid.push_back(c);
    }
  } else {
    for (double l2 : {0.0, 1e-3, 1e-1}) {
      BaseConfig c;
      c.l2 = l2;
      grid.push_back(c);
    }
  }
  return grid;
}

MetricsReport evaluate_protocol(const LoadedDataset& data, const std::string& representation,
                                const ProtocolOptions& options) {
  const SplitData train = data.split(Split::Train);
  const SplitData validation = data.split(Split::Validation);
  const SplitData test = data.split(Split::Test);

  double best_score = -1.0;
  BaseKind best_kind = BaseKind::Knn;
  BaseConfig best_config;
  for (BaseKind kind : options.kinds)
    for (const BaseConfig& config : config_grid(kind)) {
      const BRModel model = train_br(train.rows, train.labels, kind, config);
      const auto pred = predict(model, validation.rows);
      double score = 0.0;
      for (Property p : kProperties) score += macro_f1(pred, validation.labels, p);
      score /= 3.0;
      if (score > best_score) {
        best_score = score;
        best_kind = kind;
        best_config = config;
      }
    }

  const BRModel model = train_br(train.rows, train.labels, best_kind, best_config);
  const auto pred = predict(model, test.rows);

  MetricsReport report;
  report.representation = representation;
  report.selected = describe(best_kind, best_config);
  report.validation_score = best_score;
  std::set<int> dims;
  for (const auto& k : test.keys) dims.insert(k.dim);
  report.dims.assign(dims.begin(), dims.end());
  for (Property p : kProperties) {
    for (int d : report.dims) {
      std::vector<PropertyLabels> sub_pred, sub_truth;
      for (std::size_t i = 0; i < test.keys.size(); ++i)
        if (test.keys[i].dim == d) {
          sub_pred.push_back(pred[i]);
          sub_truth.push_back(test.labels[i]);
        }
      report.rows.push_back({p, d, macro_f1(sub_pred, sub_truth, p)});
    }
    report.rows.push_back({p, 0, macro_f1(pred, test.labels, p)});
    report.confusions[property_slot(p)] =
        confusion(class_column(pred, p), class_column(test.labels, p), class_count(p));
  }
  return report;
}

MetricsReport evaluate_protocol(const DatasetManifest& manifest, const std::filesystem::path& root,
                                const ProtocolOptions& options) {
  const LoadedDataset data = load_dataset(manifest, root);
  return evaluate_protocol(data, std::string(representation_name(manifest.config.representation)), options);
}

}  // namespace landscape
