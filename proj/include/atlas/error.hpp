#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atlas {

/// Malformed or out-of-contract input. The CLI maps this to exit status 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a polynomial expression; `position` is a 0-based offset.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// The input is well formed but the requested construction does not apply to it
/// (for example a subdivision that is not a triangulation). Exit status 2.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace atlas
