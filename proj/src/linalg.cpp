#include "landscape/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "landscape/error.hpp"

namespace landscape::linalg {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

std::size_t argmax_abs(const Matrix& v, std::size_t col) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < v.rows(); ++r)
    if (std::fabs(v(r, col)) > std::fabs(v(best, col))) best = r;
  return best;
}

}  // namespace

SymmetricEigen symmetric_eigen(const Matrix& input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw Error(Errc::DimensionMismatch, "eigen: matrix is not square");
  for (double v : input.data())
    if (!std::isfinite(v)) throw Error(Errc::NumericalFailure, "eigen: non-finite matrix entry");

  Matrix a = input;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double scale = 0.0;
  for (double x : a.data()) scale = std::max(scale, std::fabs(x));
  const double tol = 1e-15 * std::max(scale, 1e-300) * static_cast<double>(n);

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_norm(a) > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_diagonal_norm(a) > tol && sweep == kMaxSweeps)
    throw Error(Errc::NumericalFailure, "eigen: Jacobi iteration did not converge");

  for (std::size_t c = 0; c < n; ++c) {
    if (v(argmax_abs(v, c), c) < 0)
      for (std::size_t r = 0; r < n; ++r) v(r, c) = -v(r, c);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> lead(n);
  for (std::size_t c = 0; c < n; ++c) lead[c] = argmax_abs(v, c);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (a(x, x) != a(y, y)) return a(x, x) > a(y, y);
    return lead[x] < lead[y];
  });

  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

Matrix gram_schmidt(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix q = a;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      double dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += q(r, c) * q(r, prev);
      for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, prev);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += q(r, c) * q(r, c);
    norm = std::sqrt(norm);
    if (!(norm > 1e-12)) throw Error(Errc::NumericalFailure, "gram_schmidt: linearly dependent columns");
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= norm;
  }
  return q;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix second_moment(const Matrix& x) {
  const std::size_t d = x.cols();
  Matrix s(d, d);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) s(i, j) += x(r, i) * x(r, j);
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      s(i, j) *= inv_n;
      s(j, i) = s(i, j);
    }
  return s;
}

Matrix covariance(const Matrix& x) {
  const std::size_t n = x.rows(), d = x.cols();
  std::vector<double> mean(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < d; ++j) mean[j] += x(r, j);
  for (double& m : mean) m /= static_cast<double>(n);
  Matrix c(d, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) c(i, j) += (x(r, i) - mean[i]) * (x(r, j) - mean[j]);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      c(i, j) /= static_cast<double>(n - 1);
      c(j, i) = c(i, j);
    }
  return c;
}

}  // namespace landscape::linalg
