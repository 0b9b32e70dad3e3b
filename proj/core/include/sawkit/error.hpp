#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sawkit
{

// Base of every error the library throws. Callers that only care about
// "something went wrong" catch this; the CLI maps the subclasses onto exit
// codes (see tools/cli).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Caller passed something outside an operation's domain.
class ArgumentError : public Error
{
public:
    using Error::Error;
};

// Malformed input text (Touchstone, CSV, config). Carries the 1-based line
// number when one is known (0 otherwise).
class FormatError : public Error
{
public:
    FormatError(const std::string& what, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Measured quantities contradict the model (e.g. effective cavity length
// shorter than the IDT separation).
class InconsistencyError : public Error
{
public:
    using Error::Error;
};

// Frequency grid unsuitable for a transform (non-uniform spacing).
class GridError : public Error
{
public:
    using Error::Error;
};

// Time-domain record too coarse for the requested echo windows.
class ResolutionError : public Error
{
public:
    using Error::Error;
};

// Regression produced a growing echo train with a passive reflector.
class NonphysicalError : public Error
{
public:
    using Error::Error;
};

} // namespace sawkit
