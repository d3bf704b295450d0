#pragma once

#include <stdexcept>
#include <string>

namespace strokesyn {

enum class ErrorCode {
    InvalidGeometry,
    Precondition,
    DegenerateLine,
    InsufficientElements,
    InsufficientPoints,
    DegenerateDistribution,
    UndefinedOverlap,
    Parse,
    UnsupportedVersion,
};

const char* to_string(ErrorCode code);

/// Every library failure is reported through this one exception type; the
/// code lets callers (CLI exit codes, HTTP status mapping) dispatch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace strokesyn
