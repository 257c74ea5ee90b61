#include "landscape/error.hpp"

namespace landscape {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnsupportedFunction: return "UnsupportedFunction";
    case Errc::InvalidDimension: return "InvalidDimension";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::SampleTooSmall: return "SampleTooSmall";
    case Errc::InvalidBounds: return "InvalidBounds";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::NeighborhoodTooLarge: return "NeighborhoodTooLarge";
    case Errc::InvalidNorm: return "InvalidNorm";
    case Errc::OutOfProtocol: return "OutOfProtocol";
    case Errc::IoError: return "IoError";
    case Errc::EmptySplit: return "EmptySplit";
    case Errc::DegenerateLabels: return "DegenerateLabels";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace landscape
