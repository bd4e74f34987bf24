#ifndef NCWARING_ERRORS_HPP
#define NCWARING_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncwaring
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position()` is a 0-based byte offset.
class ParseError : public Error
{
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), pos_(pos)
    {
    }

    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

/// Variable index outside [1, g], or operands of different arity.
class ArityError : public Error
{
public:
    using Error::Error;
};

/// Shape disagreement (matrix sizes, vector lengths, degree/block sizes).
class ShapeError : public Error
{
public:
    using Error::Error;
};

/// A precondition on the mathematical input was violated
/// (non-homogeneous input, delta not dividing the degree, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

class OverflowError : public Error
{
public:
    using Error::Error;
};

} // namespace ncwaring

#endif // NCWARING_ERRORS_HPP
