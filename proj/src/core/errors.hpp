#pragma once

#include <stdexcept>
#include <string>

namespace mit {

// Error categories aligned with the CLI exit codes: 2 parse, 3 domain, 4 numeric.
// Argument errors (bad preconditions on direct library calls) map to 2 as well
// when they surface through the CLI, since there they are always parse-time.
enum class ErrorKind { argument = 1, parse = 2, domain = 3, numeric = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(ErrorKind::argument, what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};

// Evaluation requested outside the operator's region of validity.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

}  // namespace mit
