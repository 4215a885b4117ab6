#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geomhh {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression source. `offset` is the 0-based character position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Evaluation left the real domain: ln/sqrt of a negative, division by zero,
// unbound parameter, non-positive function value where positivity is required.
class DomainError : public Error {
public:
    using Error::Error;
};

// A finite formula produced a non-finite intermediate (overflow for extreme
// exponents and the like).
class RangeError : public Error {
public:
    using Error::Error;
};

// Quadrature failed to reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

} // namespace geomhh
