#include "tempcast/errors.hpp"

namespace tempcast {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Validation: return "Validation";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::NonFiniteObservation: return "NonFiniteObservation";
        case ErrorCode::InvalidLead: return "InvalidLead";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::MalformedRow: return "MalformedRow";
        case ErrorCode::MalformedDate: return "MalformedDate";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::DuplicateDate: return "DuplicateDate";
        case ErrorCode::GapTooLarge: return "GapTooLarge";
        case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

const char* to_string(ValidationRule rule) {
    switch (rule) {
        case ValidationRule::Range: return "range";
        case ValidationRule::NotFinite: return "not-finite";
        case ValidationRule::NonConsecutive: return "non-consecutive";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ValidationError::ValidationError(std::size_t index, ValidationRule rule, const std::string& detail)
    : Error(ErrorCode::Validation,
            "validation failed at index " + std::to_string(index) + " (" + to_string(rule) +
                "): " + detail),
      index_(index),
      rule_(rule) {}

ParseError::ParseError(ErrorCode code, std::size_t line, const std::string& detail)
    : Error(code, "line " + std::to_string(line) + ": " + detail), line_(line) {}

DuplicateDateError::DuplicateDateError(Date date)
    : Error(ErrorCode::DuplicateDate, "duplicate date " + format_iso_date(date)), date_(date) {}

GapTooLargeError::GapTooLargeError(Date start, std::size_t length, std::size_t max_gap)
    : Error(ErrorCode::GapTooLarge,
            "gap of " + std::to_string(length) + " missing days starting " +
                format_iso_date(start) + " exceeds max gap " + std::to_string(max_gap)),
      start_(start),
      length_(length) {}

InsufficientDataError::InsufficientDataError(std::size_t required, std::size_t available)
    : Error(ErrorCode::InsufficientData,
            "insufficient data: need " + std::to_string(required) + " days, have " +
                std::to_string(available)),
      required_(required),
      available_(available) {}

}  // namespace tempcast
