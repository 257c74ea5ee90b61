#include "landscape/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "landscape/error.hpp"
#include "landscape/linalg.hpp"
#include "landscape/rng.hpp"

namespace landscape {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSchwefelOptimum = 4.2096874633 / 2.0;
constexpr double kSchwefelOffset = 4.189828872724339;
constexpr double kLunacekMu0 = 2.5;
constexpr int kWeierstrassTerms = 12;

double t_osz(double x) {
  if (x == 0.0) return 0.0;
  const double xh = std::log(std::fabs(x));
  const double c1 = x > 0 ? 10.0 : 5.5;
  const double c2 = x > 0 ? 7.9 : 3.1;
  return (x > 0 ? 1.0 : -1.0) * std::exp(xh + 0.049 * (std::sin(c1 * xh) + std::sin(c2 * xh)));
}

void t_asy(std::vector<double>& x, double beta) {
  const double denom = x.size() > 1 ? static_cast<double>(x.size() - 1) : 1.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0) x[i] = std::pow(x[i], 1.0 + beta * static_cast<double>(i) / denom * std::sqrt(x[i]));
}

// Diagonal of Λ^alpha.
double lambda(double alpha, std::size_t i, std::size_t dim) {
  return std::pow(alpha, 0.5 * static_cast<double>(i) / static_cast<double>(dim - 1));
}

double penalty(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double over = std::fabs(v) - 5.0;
    if (over > 0) s += over * over;
  }
  return s;
}

std::vector<double> rotate(const Matrix& r, std::span<const double> x) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += r(i, j) * x[j];
  return out;
}

Matrix identity(std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix random_rotation(Rng& rng, std::size_t d) {
  Matrix g(d, d);
  for (double& v : g.data()) v = rng.gaussian();
  return linalg::gram_schmidt(g);
}

double rastrigin_sum(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += std::cos(kTwoPi * v);
  return 10.0 * (static_cast<double>(z.size()) - s);
}

}  // namespace

FunctionId function_from_number(int number) {
  for (FunctionId id : kSupportedFunctions)
    if (static_cast<int>(id) == number) return id;
  throw Error(Errc::UnsupportedFunction, "function " + std::to_string(number) + " is not in the supported set");
}

FunctionId parse_function_id(std::string_view text) {
  if (!text.empty() && (text.front() == 'F' || text.front() == 'f')) text.remove_prefix(1);
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(Errc::UnsupportedFunction, "cannot parse function id '" + std::string(text) + "'");
  return function_from_number(std::stoi(std::string(text)));
}

int function_number(FunctionId id) { return static_cast<int>(id); }

std::string function_name(FunctionId id) { return "F" + std::to_string(function_number(id)); }

std::string_view property_name(Property p) {
  switch (p) {
    case Property::Multimodality: return "multimodality";
    case Property::GlobalStructure: return "global_structure";
    case Property::Funnel: return "funnel";
  }
  return "";
}

std::size_t class_count(Property p) {
  switch (p) {
    case Property::Multimodality: return 4;
    case Property::GlobalStructure: return 5;
    case Property::Funnel: return 2;
  }
  return 0;
}

std::string_view class_name(Property p, std::size_t index) {
  static constexpr std::array<std::string_view, 4> multimodality = {"none", "low", "med", "high"};
  static constexpr std::array<std::string_view, 5> global = {"none", "weak", "med", "strong", "deceptive"};
  static constexpr std::array<std::string_view, 2> funnel = {"yes", "none"};
  if (index >= class_count(p)) throw Error(Errc::InvalidArgument, "class index out of range");
  switch (p) {
    case Property::Multimodality: return multimodality[index];
    case Property::GlobalStructure: return global[index];
    case Property::Funnel: return funnel[index];
  }
  return "";
}

std::size_t class_index(const PropertyLabels& labels, Property p) {
  switch (p) {
    case Property::Multimodality: return static_cast<std::size_t>(labels.multimodality);
    case Property::GlobalStructure: return static_cast<std::size_t>(labels.global_structure);
    case Property::Funnel: return static_cast<std::size_t>(labels.funnel);
  }
  return 0;
}

PropertyLabels labels_from_indices(std::size_t multimodality, std::size_t global_structure, std::size_t funnel) {
  if (multimodality >= 4 || global_structure >= 5 || funnel >= 2)
    throw Error(Errc::InvalidArgument, "label index outside its alphabet");
  return {static_cast<Multimodality>(multimodality), static_cast<GlobalStructure>(global_structure),
          static_cast<Funnel>(funnel)};
}

PropertyLabels labels(FunctionId id) {
  using M = Multimodality;
  using G = GlobalStructure;
  switch (id) {
    case FunctionId::F1: return {M::None, G::None, Funnel::Yes};
    case FunctionId::F3: return {M::High, G::Strong, Funnel::Yes};
    case FunctionId::F8: return {M::Low, G::None, Funnel::Yes};
    case FunctionId::F16: return {M::High, G::Med, Funnel::None};
    case FunctionId::F20: return {M::Med, G::Deceptive, Funnel::Yes};
    case FunctionId::F24: return {M::High, G::Weak, Funnel::Yes};
  }
  throw Error(Errc::UnsupportedFunction, "no labels for function " + std::to_string(static_cast<int>(id)));
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) {
  return Bounds{std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

void Bounds::validate() const {
  if (lower.size() != upper.size() || lower.empty())
    throw Error(Errc::InvalidBounds, "lower and upper bounds differ in length or are empty");
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (!(lower[j] < upper[j]) || !std::isfinite(lower[j]) || !std::isfinite(upper[j]))
      throw Error(Errc::InvalidBounds, "bounds require finite l < u in coordinate " + std::to_string(j));
}

ProblemInstance make_problem(FunctionId id, int dim, int instance_id) {
  function_from_number(static_cast<int>(id));
  if (dim < 2) throw Error(Errc::InvalidDimension, "dimension must be at least 2, got " + std::to_string(dim));
  if (instance_id < 0) throw Error(Errc::InvalidArgument, "instance id must be non-negative");

  const auto d = static_cast<std::size_t>(dim);
  ProblemInstance p;
  p.function_id_ = id;
  p.dim_ = dim;
  p.instance_id_ = instance_id;
  p.bounds_ = Bounds::uniform(d, -5.0, 5.0);
  p.x_opt_.assign(d, 0.0);
  p.signs_.assign(d, 1.0);
  p.rotation_ = identity(d);
  p.rotation2_ = identity(d);
  if (instance_id == 0) return p;

  std::uint64_t seed = hash_combine64(0x6c616e6473636170ULL, static_cast<std::uint64_t>(id));
  seed = hash_combine64(seed, d);
  seed = hash_combine64(seed, static_cast<std::uint64_t>(instance_id));
  Rng rng(seed);

  for (double& v : p.x_opt_) v = rng.uniform(-4.0, 4.0);
  p.f_opt_ = rng.uniform(-100.0, 100.0);
  for (double& s : p.signs_) s = (rng.next() >> 63) ? 1.0 : -1.0;
  Matrix r = random_rotation(rng, d);
  Matrix q = random_rotation(rng, d);
  if (id == FunctionId::F16 || id == FunctionId::F24) {
    p.rotation_ = std::move(r);
    p.rotation2_ = std::move(q);
  }
  return p;
}

double ProblemInstance::evaluate(std::span<const double> x) const {
  const auto d = static_cast<std::size_t>(dim_);
  if (x.size() != d)
    throw Error(Errc::DimensionMismatch,
                "expected " + std::to_string(d) + " coordinates, got " + std::to_string(x.size()));
  for (double v : x)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteInput, "non-finite decision variable");

  const double dd = static_cast<double>(d);
  std::vector<double> t(d);
  for (std::size_t i = 0; i < d; ++i) t[i] = x[i] - x_opt_[i];

  switch (function_id_) {
    case FunctionId::F1: {
      double s = 0.0;
      for (double v : t) s += v * v;
      return s + f_opt_;
    }
    case FunctionId::F3: {
      std::vector<double> z(d);
      for (std::size_t i = 0; i < d; ++i) z[i] = t_osz(t[i]);
      t_asy(z, 0.2);
      double sq = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        z[i] *= lambda(10.0, i, d);
        sq += z[i] * z[i];
      }
      return rastrigin_sum(z) + sq + f_opt_;
    }
    case FunctionId::F8: {
      const double scale = std::max(1.0, std::sqrt(dd) / 8.0);
      std::vector<double> z(d);
      for (std::size_t i = 0; i < d; ++i) z[i] = scale * t[i] + 1.0;
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < d; ++i) {
        const double a = z[i] * z[i] - z[i + 1];
        const double b = z[i] - 1.0;
        s += 100.0 * a * a + b * b;
      }
      return s + f_opt_;
    }
    case FunctionId::F16: {
      std::vector<double> u = rotate(rotation_, t);
      for (double& v : u) v = t_osz(v);
      u = rotate(rotation2_, u);
      for (std::size_t i = 0; i < d; ++i) u[i] *= lambda(0.01, i, d);
      const std::vector<double> z = rotate(rotation_, u);
      double f0 = 0.0;
      for (int k = 0; k < kWeierstrassTerms; ++k)
        f0 += std::ldexp(1.0, -k) * std::cos(std::numbers::pi * std::pow(3.0, k));
      double s = 0.0;
      for (double zi : z)
        for (int k = 0; k < kWeierstrassTerms; ++k)
          s += std::ldexp(1.0, -k) * std::cos(kTwoPi * std::pow(3.0, k) * (zi + 0.5));
      const double inner = s / dd - f0;
      return 10.0 * inner * inner * inner + 10.0 / dd * penalty(x) + f_opt_;
    }
    case FunctionId::F20: {
      const double c = kSchwefelOptimum;
      std::vector<double> xh(d), zh(d), z(d), canon(d);
      for (std::size_t i = 0; i < d; ++i) {
        canon[i] = t[i] + c * signs_[i];
        xh[i] = 2.0 * signs_[i] * canon[i];
      }
      zh[0] = xh[0];
      for (std::size_t i = 1; i < d; ++i) zh[i] = xh[i] + 0.25 * (xh[i - 1] - 2.0 * c);
      double s = 0.0;
      std::vector<double> z_scaled(d);
      for (std::size_t i = 0; i < d; ++i) {
        z[i] = 100.0 * (lambda(10.0, i, d) * (zh[i] - 2.0 * c) + 2.0 * c);
        s += z[i] * std::sin(std::sqrt(std::fabs(z[i])));
        z_scaled[i] = z[i] / 100.0;
      }
      return -s / (100.0 * dd) + kSchwefelOffset + 100.0 * penalty(z_scaled) + f_opt_;
    }
    case FunctionId::F24: {
      const double mu0 = kLunacekMu0;
      const double s_coef = 1.0 - 1.0 / (2.0 * std::sqrt(dd + 20.0) - 8.2);
      const double mu1 = -std::sqrt((mu0 * mu0 - 1.0) / s_coef);
      std::vector<double> xh(d), canon(d), shifted(d);
      double sphere0 = 0.0, sphere1 = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        canon[i] = t[i] + 0.5 * mu0 * signs_[i];
        xh[i] = 2.0 * signs_[i] * canon[i];
        sphere0 += (xh[i] - mu0) * (xh[i] - mu0);
        sphere1 += (xh[i] - mu1) * (xh[i] - mu1);
        shifted[i] = xh[i] - mu0;
      }
      std::vector<double> u = rotate(rotation_, shifted);
      for (std::size_t i = 0; i < d; ++i) u[i] *= lambda(100.0, i, d);
      const std::vector<double> z = rotate(rotation2_, u);
      return std::min(sphere0, dd + s_coef * sphere1) + rastrigin_sum(z) + 1e4 * penalty(canon) + f_opt_;
    }
  }
  throw Error(Errc::UnsupportedFunction, "unsupported function");
}

}  // namespace landscape
