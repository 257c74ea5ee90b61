#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace landscape {

enum class Errc {
  UnsupportedFunction,
  InvalidDimension,
  DimensionMismatch,
  NonFiniteInput,
  SampleTooSmall,
  InvalidBounds,
  NumericalFailure,
  OutOfBounds,
  DimensionTooLarge,
  NeighborhoodTooLarge,
  InvalidNorm,
  OutOfProtocol,
  IoError,
  EmptySplit,
  DegenerateLabels,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace landscape
