#pragma once

#include <stdexcept>
#include <string>

namespace algothermo {

// A bit stream that is not a complete program (no marker, malformed or
// truncated core). Such programs never halt and are excluded from every sum.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The requested constraint has no program within the enumerated bound.
class UnsatisfiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The enumeration bound is too small for the requested window; re-enumerate
// with a larger core length.
class BoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace algothermo
