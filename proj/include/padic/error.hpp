#pragma once

#include <stdexcept>
#include <string>

namespace padic {

enum class ErrorCode {
    InvalidArgument,
    NotPrime,
    PDividesDenominator,
    NotIntegral,
    InsufficientPrecision,
    InfeasibleSize,
    ThresholdNonpositive,
    ThresholdNegative,
    NoOverfullBucket,
    OutOfRange,
    ConstraintViolation,
    ParseError,
    Internal,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
        case ErrorCode::NotPrime: return "NOT_PRIME";
        case ErrorCode::PDividesDenominator: return "P_DIVIDES_DENOMINATOR";
        case ErrorCode::NotIntegral: return "NOT_INTEGRAL";
        case ErrorCode::InsufficientPrecision: return "INSUFFICIENT_PRECISION";
        case ErrorCode::InfeasibleSize: return "INFEASIBLE_SIZE";
        case ErrorCode::ThresholdNonpositive: return "THRESHOLD_NONPOSITIVE";
        case ErrorCode::ThresholdNegative: return "THRESHOLD_NEGATIVE";
        case ErrorCode::NoOverfullBucket: return "NO_OVERFULL_BUCKET";
        case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
        case ErrorCode::ConstraintViolation: return "CONSTRAINT_VIOLATION";
        case ErrorCode::ParseError: return "PARSE_ERROR";
        case ErrorCode::Internal: return "INTERNAL";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace padic
