#pragma once

#include <stdexcept>
#include <string>

namespace glueback {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bit-vector lengths or matrix shapes do not match.
struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

// A mathematical precondition failed (invalid complex, incomplete coloring,
// dependent colors at a face intersection, disconnected base, ...).
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Malformed input file.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// An enumeration guard was exceeded (group rank, coloring space size, ...).
struct GuardError : Error {
    explicit GuardError(const std::string& msg) : Error(msg) {}
};

// A structural guarantee of the library itself failed.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace glueback
