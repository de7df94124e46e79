#include "aqs/error.hpp"

namespace aqs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ModeOutOfRange: return "ModeOutOfRange";
    case ErrorCode::StateAnnihilated: return "StateAnnihilated";
    case ErrorCode::PortfolioTooSmall: return "PortfolioTooSmall";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace aqs
