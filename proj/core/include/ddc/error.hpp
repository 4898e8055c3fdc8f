#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddc {

struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct SignatureMismatch : Error
{
    using Error::Error;
};

struct InvalidArgument : Error
{
    using Error::Error;
};

struct OutOfRange : Error
{
    using Error::Error;
};

struct UnsupportedConfiguration : Error
{
    using Error::Error;
};

struct NotASubfamily : Error
{
    using Error::Error;
};

// A comonad or coalgebra diagram failed to commute; the message names the diagram.
struct LawViolation : Error
{
    using Error::Error;
};

struct ParseError : Error
{
    ParseError(int line, const std::string & what) :
        Error("line " + std::to_string(line) + ": " + what),
        line(line)
    {
    }

    int line;
};

// Raised instead of silently truncating: carries the configured cap and, when known,
// the size the computation would have reached.
struct CapExceeded : Error
{
    CapExceeded(const std::string & what, std::size_t cap, std::size_t would_be = 0) :
        Error(what + " (cap " + std::to_string(cap) +
              (would_be ? ", would be " + std::to_string(would_be) : std::string{}) + ")"),
        cap(cap),
        would_be(would_be)
    {
    }

    std::size_t cap;
    std::size_t would_be;
};

} // namespace ddc
