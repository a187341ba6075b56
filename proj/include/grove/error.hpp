#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace grove {

// Base of every error raised by the engine. The category drives HTTP status
// codes in the service and exit codes in the CLI.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed dataset record. Carries file and line when known.
class LoadError : public Error {
public:
    LoadError(std::string file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

// Dataset violates a structural invariant (dangling endpoint, duplicate id, ...).
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, std::vector<std::string> offending = {})
        : Error(what), offending_(std::move(offending)) {}

    const std::vector<std::string>& offending() const { return offending_; }

private:
    std::vector<std::string> offending_;
};

class NotFound : public Error {
public:
    using Error::Error;
};

// Operation called on a state that does not satisfy its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class CycleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

}  // namespace grove
