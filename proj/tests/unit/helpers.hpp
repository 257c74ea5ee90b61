#pragma once

#include <doctest.h>

#include <filesystem>
#include <string>

#include "landscape/error.hpp"
#include "landscape/matrix.hpp"
#include "landscape/rng.hpp"

namespace testing {

/// Asserts that `expr` throws landscape::Error with the given code.
#define CHECK_THROWS_CODE(expr, errc)                                          \
  do {                                                                         \
    bool thrown_ = false;                                                      \
    try {                                                                      \
      (void)(expr);                                                            \
    } catch (const landscape::Error& e_) {                                     \
      thrown_ = true;                                                          \
      CHECK_MESSAGE(e_.code() == (errc), "unexpected error: " << e_.what());   \
    }                                                                          \
    CHECK_MESSAGE(thrown_, "expected landscape::Error from " #expr);           \
  } while (0)

inline landscape::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = 0.0,
                                       double hi = 1.0) {
  landscape::Rng rng(seed);
  landscape::Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name) {
    path_ = std::filesystem::temp_directory_path() / ("landscape_test_" + name);
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
