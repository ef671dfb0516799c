#pragma once

#include <stdexcept>
#include <string>

namespace denguecast {

/// Base class for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two series that must cover the same week range do not.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Input data violates a documented constraint (negative count, bad week string, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Not enough usable data to perform the requested operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A computation has no defined result (zero observed mean, over-parameterized fit, ...).
class UndefinedResultError : public Error {
public:
    using Error::Error;
};

} // namespace denguecast
