#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trusty {

// Base class for all recoverable failures raised by the library. Contract
// violations (wrong digest length, blank node handed to the canonicalizer)
// throw std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedCodeError : public Error {
public:
    using Error::Error;
};

class UnsupportedModuleError : public Error {
public:
    using Error::Error;
};

class NotTrustyUriError : public Error {
public:
    using Error::Error;
};

class DelimiterError : public Error {
public:
    using Error::Error;
};

class UnsupportedAlgorithmError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace trusty
