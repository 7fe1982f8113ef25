#pragma once

#include <stdexcept>
#include <string>

namespace ramac {

// Raised for malformed inputs: bad channel matrices, inconsistent profile
// shapes, rate vectors out of range, unparseable config files. The CLI maps
// this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a request is structurally valid but exceeds the desk-scale
// limits (user count, block length, per-user message count, joint candidate
// budget). The CLI maps this to exit code 3.
class GuardrailError : public std::runtime_error {
public:
    explicit GuardrailError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ramac
