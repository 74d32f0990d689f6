#pragma once

#include <stdexcept>
#include <string>

namespace shapeinv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Lexical/grammar failure; offset is a byte position into the input text.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
    std::size_t offset;
};

struct EvalError : Error {
    using Error::Error;
};
struct UnboundSymbolError : EvalError {
    explicit UnboundSymbolError(const std::string& name)
        : EvalError("unbound symbol '" + name + "'"), symbol(name) {}
    std::string symbol;
};
struct DomainError : EvalError {
    using EvalError::EvalError;
};
struct PoleError : EvalError {
    using EvalError::EvalError;
};

struct SamplerExhaustedError : Error {
    using Error::Error;
};

struct ConstraintError : Error {
    ConstraintError(const std::string& msg, std::string which)
        : Error(msg), constraint(std::move(which)) {}
    std::string constraint;  // the violated inequality, e.g. "B<A^2"
};

struct UnknownIdError : Error {
    using Error::Error;
};

struct GridError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct NotNormalizableError : Error {
    using Error::Error;
};
struct RegionError : Error {
    using Error::Error;
};
struct BranchCutError : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};

}  // namespace shapeinv
