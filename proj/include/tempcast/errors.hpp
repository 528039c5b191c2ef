#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "tempcast/date.hpp"

namespace tempcast {

enum class ErrorCode {
    Validation,
    LengthMismatch,
    EmptyInput,
    OutOfRange,
    TooShort,
    NonFiniteObservation,
    InvalidLead,
    InvalidParams,
    InvalidConfig,
    InsufficientData,
    MissingColumn,
    MalformedRow,
    MalformedDate,
    NonFiniteInput,
    DuplicateDate,
    GapTooLarge,
    EmptyAfterFilter,
    Io,
};

const char* to_string(ErrorCode code);

/// Base of every error raised by the library. Data-dependent failures carry a
/// machine-readable code so callers (the CLI in particular) can classify them.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class ValidationRule { Range, NotFinite, NonConsecutive };

const char* to_string(ValidationRule rule);

class ValidationError : public Error {
public:
    ValidationError(std::size_t index, ValidationRule rule, const std::string& detail);

    std::size_t index() const noexcept { return index_; }
    ValidationRule rule() const noexcept { return rule_; }

private:
    std::size_t index_;
    ValidationRule rule_;
};

/// CSV parse failure tied to a 1-based physical line number.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t line, const std::string& detail);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DuplicateDateError : public Error {
public:
    explicit DuplicateDateError(Date date);

    Date date() const noexcept { return date_; }

private:
    Date date_;
};

class GapTooLargeError : public Error {
public:
    GapTooLargeError(Date start, std::size_t length, std::size_t max_gap);

    Date start() const noexcept { return start_; }
    std::size_t length() const noexcept { return length_; }

private:
    Date start_;
    std::size_t length_;
};

class InsufficientDataError : public Error {
public:
    InsufficientDataError(std::size_t required, std::size_t available);

    std::size_t required() const noexcept { return required_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t required_;
    std::size_t available_;
};

}  // namespace tempcast
