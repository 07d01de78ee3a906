#pragma once

#include <stdexcept>
#include <string>

namespace cpneq {

// Error taxonomy mirrors the CLI exit codes: config 2, tolerance 3, domain 4.
struct Error : std::runtime_error {
  int code;
  Error(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(2, what) {}
};

struct ToleranceError : Error {
  explicit ToleranceError(const std::string& what) : Error(3, what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(4, what) {}
};

// Lossless Fresnel denominator crossing zero (surface-plasmon pole hit
// exactly). Callers doing principal-value work catch this and reroute.
struct PoleError : DomainError {
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

}  // namespace cpneq
