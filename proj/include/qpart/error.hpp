#pragma once

#include <stdexcept>
#include <string>

namespace qpart {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// series
class NonUnitConstantTerm : public Error { using Error::Error; };
class NonConvergent : public Error { using Error::Error; };
class DivisionInexact : public Error { using Error::Error; };

// partitions / domains / bijections
class InvalidPartition : public Error { using Error::Error; };
class NotSelfConjugate : public Error { using Error::Error; };
class DomainViolation : public Error { using Error::Error; };
class UnknownDomain : public Error { using Error::Error; };
class MissingParam : public Error { using Error::Error; };
class UnknownBijection : public Error { using Error::Error; };

// identities
class UnknownIdentity : public Error { using Error::Error; };
class BadParams : public Error { using Error::Error; };

// dsl evaluation
class UnboundVariable : public Error { using Error::Error; };
class NonIntegerExponent : public Error { using Error::Error; };
class EvalError : public Error { using Error::Error; };

/// Syntax error in DSL source; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::string message, std::string expected)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                (expected.empty() ? std::string{} : " (expected " + expected + ")")),
          line_(line), column_(column), message_(std::move(message)), expected_(std::move(expected)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    int line_;
    int column_;
    std::string message_;
    std::string expected_;
};

} // namespace qpart
