#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhcert {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A computed exponent left the representable range of double.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// Expression evaluation hit an undefined point (ln of non-positive,
// division by zero) or produced a non-finite intermediate.
class EvalError : public Error {
public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

// Expression text failed to parse; carries the byte offset and what
// the parser expected there.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& expected)
        : Error("syntax error at offset " + std::to_string(position) +
                ": expected " + expected),
          position_(position),
          expected_(expected) {}

    std::size_t position() const { return position_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

// Invalid run configuration handed to an orchestration entry point.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

}  // namespace hhcert
