#pragma once

#include <stdexcept>
#include <string>

namespace revsum {

// Every error carries a short machine-readable code next to the human
// message; the CLI maps the exception type to its exit status.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Bad flags, malformed config. Exit status 1.
class UsageError : public Error {
public:
    using Error::Error;
};

// Unreadable or invalid input data. Exit status 2.
class DataError : public Error {
public:
    using Error::Error;
};

// A pipeline stage failed mid-flight. Exit status 3.
class StageError : public Error {
public:
    StageError(std::string stage, std::string code, const std::string& message)
        : Error(std::move(code), message), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

// Caller passed a value outside an operation's documented domain.
class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& message)
        : Error("contract", message) {}
};

}  // namespace revsum
