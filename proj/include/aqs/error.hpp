#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aqs {

enum class ErrorCode {
    ZeroNorm,
    NonFinite,
    DimMismatch,
    NotHermitian,
    ModeOutOfRange,
    StateAnnihilated,
    PortfolioTooSmall,
    ConstantVector,
    TooFewPoints,
    ScoreOutOfRange,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require_same_dim(std::size_t a, std::size_t b, std::string_view where) {
    if (a != b) {
        throw Error(ErrorCode::DimMismatch, std::string(where) + ": " + std::to_string(a) +
                                                " vs " + std::to_string(b));
    }
}

}  // namespace aqs
