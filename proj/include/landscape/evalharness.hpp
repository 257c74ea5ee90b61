#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "landscape/dataset.hpp"
#include "landscape/elafeat.hpp"
#include "landscape/fitmap.hpp"
#include "landscape/matrix.hpp"
#include "landscape/problems.hpp"

namespace landscape {

inline constexpr std::size_t kDownsampleGrid = 8;
inline constexpr std::size_t kMapSummaryWidth = 5 + kDownsampleGrid * kDownsampleGrid;

// Flattening into fixed-length classifier rows.
std::vector<double> flatten_features(const FeatureVector& features);  // Missing -> NaN
std::vector<double> flatten_map(const FitnessMap& map);
std::vector<double> flatten_cloud(const Matrix& embedded);

enum class BaseKind { Knn, Logistic };
std::string_view base_kind_name(BaseKind k);
BaseKind parse_base_kind(std::string_view name);

struct BaseConfig {
  std::size_t k = 5;
  double learning_rate = 0.1;
  int iterations = 500;
  double l2 = 0.0;
};

std::string describe(BaseKind kind, const BaseConfig& config);

/// Per-column mean/sd from training rows; zero-sd columns scale by 1.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> sd;

  static Standardizer fit(const Matrix& rows);
  Matrix apply(const Matrix& rows) const;
};

struct PropertyClassifier {
  std::size_t classes = 0;
  Matrix train_rows;                 // knn: standardized training rows
  std::vector<std::size_t> train_y;  // knn
  Matrix weights;                    // logistic: classes x (features + 1), bias last
};

struct BRModel {
  BaseKind kind = BaseKind::Knn;
  BaseConfig config;
  Standardizer standardizer;
  std::size_t arity = 0;
  std::array<PropertyClassifier, 3> classifiers;
};

/// Throws DegenerateLabels when a property has a single class in `labels`.
BRModel train_br(const Matrix& rows, std::span<const PropertyLabels> labels, BaseKind kind, const BaseConfig& config);

/// Refits only the classifier of `property`.
void retrain_property(BRModel& model, Property property, const Matrix& rows, std::span<const PropertyLabels> labels);

/// Throws DimensionMismatch when the row arity differs from training.
std::vector<PropertyLabels> predict(const BRModel& model, const Matrix& rows);
std::vector<std::size_t> predict_property(const BRModel& model, Property property, const Matrix& rows);

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;  // [truth][pred]

ConfusionMatrix confusion(std::span<const std::size_t> pred, std::span<const std::size_t> truth, std::size_t classes);
/// F1 per class; classes absent from truth carry NaN.
std::vector<double> per_class_f1(std::span<const std::size_t> pred, std::span<const std::size_t> truth,
                                 std::size_t classes);
/// Unweighted mean of per-class F1 over classes present in truth.
double macro_f1(std::span<const std::size_t> pred, std::span<const std::size_t> truth, std::size_t classes);
double macro_f1(std::span<const PropertyLabels> pred, std::span<const PropertyLabels> truth, Property property);

struct MetricRow {
  Property property;
  int dim;  // 0 = pooled "all"
  double macro_f1;
};

struct MetricsReport {
  std::string representation;
  std::string selected;        // chosen base classifier and config
  double validation_score = 0; // mean macro-F1 over properties
  std::vector<int> dims;
  std::vector<MetricRow> rows;
  std::array<ConfusionMatrix, 3> confusions;

  double score(Property property, int dim = 0) const;
  std::string to_csv() const;
  std::string to_table() const;
};

struct ProtocolOptions {
  std::vector<BaseKind> kinds{BaseKind::Knn, BaseKind::Logistic};
};

/// Default grid: knn k in {1, 5, 11}; logistic L2 in {0, 1e-3, 1e-1}.
std::vector<BaseConfig> config_grid(BaseKind kind);

MetricsReport evaluate_protocol(const LoadedDataset& data, const std::string& representation,
                                const ProtocolOptions& options = {});
MetricsReport evaluate_protocol(const DatasetManifest& manifest, const std::filesystem::path& root,
                                const ProtocolOptions& options = {});

}  // namespace landscape
