#include "mixent/error.hpp"

namespace mixent {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyMixture: return "EmptyMixture";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::ZeroWeightSum: return "ZeroWeightSum";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MixedFamilies: return "MixedFamilies";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidComponent: return "InvalidComponent";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NotHomoscedastic: return "NotHomoscedastic";
    case ErrorCode::UnsupportedDistance: return "UnsupportedDistance";
    case ErrorCode::InvalidGrouping: return "InvalidGrouping";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NotOneDimensional: return "NotOneDimensional";
    case ErrorCode::DegreesOfFreedomTooSmall: return "DegreesOfFreedomTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace mixent
