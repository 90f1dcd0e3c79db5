#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toptree {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `position()` is a 0-based offset into the parsed
/// text (or a 1-based line number for file formats, see `line()`).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
        : Error(what), position_(position), line_(line) {}

    std::size_t position() const noexcept { return position_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t position_;
    std::size_t line_;
};

/// Two objects that must share a ranked alphabet do not.
class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A configurable size cap was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

}  // namespace toptree
