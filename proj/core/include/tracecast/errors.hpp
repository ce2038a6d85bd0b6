#pragma once

#include <stdexcept>
#include <string>

namespace tracecast {

// Malformed input text: selector strings, JSON documents, gesture logs.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a semantic constraint
// (unknown screen, transition target that does not resolve, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tracecast
