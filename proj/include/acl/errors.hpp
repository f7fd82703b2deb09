#pragma once

#include <stdexcept>
#include <string>

namespace acl {

// Root of every error raised by the library. Callers that only care about
// "something in acl went wrong" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValuationError : public Error {
public:
    using Error::Error;
};

// Raised by finite enumeration oracles that need an explicit residue ring.
class EnumerationError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    PoleError(const std::string& what, int order) : Error(what), order_(order) {}
    [[nodiscard]] int order() const noexcept { return order_; }

private:
    int order_;
};

class ZeroFunctionError : public Error {
public:
    using Error::Error;
};

class MismatchError : public Error {
public:
    using Error::Error;
};

// A locally constant table was asked to represent something finer than its level.
class RefinementError : public Error {
public:
    using Error::Error;
};

class ExcludedPointError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NotInAugmentationIdeal : public Error {
public:
    using Error::Error;
};

class PairingNotPerfect : public Error {
public:
    using Error::Error;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace acl
