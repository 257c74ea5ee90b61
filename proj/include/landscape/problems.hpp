#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "landscape/matrix.hpp"

namespace landscape {

enum class FunctionId { F1 = 1, F3 = 3, F8 = 8, F16 = 16, F20 = 20, F24 = 24 };

inline constexpr std::array<FunctionId, 6> kSupportedFunctions = {
    FunctionId::F1, FunctionId::F3, FunctionId::F8, FunctionId::F16, FunctionId::F20, FunctionId::F24};

/// Parses "F3", "f3" or "3". Throws UnsupportedFunction.
FunctionId parse_function_id(std::string_view text);
FunctionId function_from_number(int number);
int function_number(FunctionId id);
std::string function_name(FunctionId id);  // "F3"

// High-level property alphabets. Enumerator order is the fixed class-index
// order used by the classifiers.
enum class Multimodality { None, Low, Med, High };
enum class GlobalStructure { None, Weak, Med, Strong, Deceptive };
enum class Funnel { Yes, None };

enum class Property { Multimodality, GlobalStructure, Funnel };
inline constexpr std::array<Property, 3> kProperties = {Property::Multimodality, Property::GlobalStructure,
                                                        Property::Funnel};

struct PropertyLabels {
  Multimodality multimodality;
  GlobalStructure global_structure;
  Funnel funnel;

  friend bool operator==(const PropertyLabels&, const PropertyLabels&) = default;
};

std::string_view property_name(Property p);
std::size_t class_count(Property p);
std::string_view class_name(Property p, std::size_t index);
std::size_t class_index(const PropertyLabels& labels, Property p);
PropertyLabels labels_from_indices(std::size_t multimodality, std::size_t global_structure, std::size_t funnel);

/// Expert labels of the benchmark function; constant across dim and instance.
PropertyLabels labels(FunctionId id);

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  static Bounds uniform(std::size_t dim, double lo, double hi);
  std::size_t dim() const noexcept { return lower.size(); }
  /// Throws InvalidBounds unless lower < upper component-wise.
  void validate() const;
};

class ProblemInstance {
 public:
  FunctionId function_id() const noexcept { return function_id_; }
  int dim() const noexcept { return dim_; }
  int instance_id() const noexcept { return instance_id_; }
  const Bounds& bounds() const noexcept { return bounds_; }
  const std::vector<double>& x_opt() const noexcept { return x_opt_; }
  double f_opt() const noexcept { return f_opt_; }
  const Matrix& rotation() const noexcept { return rotation_; }
  const Matrix& rotation2() const noexcept { return rotation2_; }
  const std::vector<double>& signs() const noexcept { return signs_; }

  /// Throws DimensionMismatch or NonFiniteInput.
  double evaluate(std::span<const double> x) const;

 private:
  friend ProblemInstance make_problem(FunctionId, int, int);

  FunctionId function_id_ = FunctionId::F1;
  int dim_ = 0;
  int instance_id_ = 0;
  Bounds bounds_;
  std::vector<double> x_opt_;
  double f_opt_ = 0.0;
  Matrix rotation_;
  Matrix rotation2_;
  std::vector<double> signs_;
};

/// Seeded instance; instance 0 is the untransformed function.
/// Throws InvalidDimension (dim < 2) or InvalidArgument (instance_id < 0).
ProblemInstance make_problem(FunctionId id, int dim, int instance_id);

inline double evaluate(const ProblemInstance& problem, std::span<const double> x) {
  return problem.evaluate(x);
}

}  // namespace landscape
