#pragma once

#include <stdexcept>
#include <string>

namespace homct {

enum class ErrorCode {
    InvalidArgument = 1,
    DimensionMismatch,
    Validation,
    Schema,
    NotSubmoduleCompatible,
    NotActionStable,
    UnsupportedAlgebra,
    RadicalFailed,
    NotAGroup,
    NotFiniteDimensional,
    NoCertificate,
    WindowExhausted,
    NotStableCycle,
    LiftFailed,
    InternalMismatch,
    Inconclusive,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace homct
