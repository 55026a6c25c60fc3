#ifndef ISOLAB_ERRORS_HPP
#define ISOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace isolab {

enum class ErrorKind {
    NonPrime,
    DivideByZero,
    DegreeTooSmall,
    InsufficientPrecision,
    ZeroValuation,
    NotInvertible,
    LengthMismatch,
    SumMismatch,
    NotANewtonPoint,
    Unrealizable,
    SamplingExhausted,
    BadHodgeProfile,
    InvalidParams,
    RangeError,
    ContextMismatch,
    ParseError,
};

inline std::string_view error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::ZeroValuation: return "ZeroValuation";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::NotANewtonPoint: return "NotANewtonPoint";
    case ErrorKind::Unrealizable: return "Unrealizable";
    case ErrorKind::SamplingExhausted: return "SamplingExhausted";
    case ErrorKind::BadHodgeProfile: return "BadHodgeProfile";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` is the machine-readable signal.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a truncated computation cannot certify its answer. `suggested` is a
/// working precision that would likely succeed (0 when unknown).
class PrecisionError : public Error {
public:
    PrecisionError(const std::string &what, int suggested = 0)
        : Error(ErrorKind::InsufficientPrecision, what), suggested_(suggested)
    {
    }

    int suggested_precision() const noexcept { return suggested_; }

private:
    int suggested_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, what);
}

} // namespace isolab

#endif // ISOLAB_ERRORS_HPP
