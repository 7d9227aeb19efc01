#pragma once

#include <stdexcept>
#include <string>

namespace physarum {

// Bad call at an API boundary (out-of-range deposit, oversubscribed init).
// These indicate caller bugs, not bad input files.
struct FieldError : std::logic_error {
    explicit FieldError(const std::string& what) : std::logic_error(what) {}
};

// Rejected scenario or analysis input. Message carries enough context to
// locate the offending key or value. CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem or stream failure. CLI maps this to exit code 2.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace physarum
