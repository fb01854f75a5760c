#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confree {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violation at an API boundary.
struct ArgumentError : Error {
    using Error::Error;
};

// Input text was rejected; `position` is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos)
    {
    }
};

// Rewriting exceeded its step budget; signals a defective rule family.
struct StepLimitError : Error {
    using Error::Error;
};

// A truncated-series operation has no exactly determined coefficient.
struct WindowError : Error {
    using Error::Error;
};

// Internal consistency assertion failed.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace confree
