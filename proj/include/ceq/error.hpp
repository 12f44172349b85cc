#pragma once

#include <stdexcept>
#include <string>

namespace ceq {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: unparsable rational, bad bitstring, invalid JSON shape.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// The adversary could not certify the submitted distribution as a non-CE.
/// Only reachable outside the guarantee regime (n < 6 or over budget).
class GuaranteeError : public Error {
public:
    explicit GuaranteeError(const std::string& what) : Error(what) {}
};

}  // namespace ceq
