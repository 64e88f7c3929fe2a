#pragma once

#include <stdexcept>
#include <string>

namespace qbn {

// Base for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file or unreadable path. The CLI maps this to exit
// status 2; every other Error maps to exit status 1.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace qbn
