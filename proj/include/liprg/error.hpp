#pragma once

#include <stdexcept>
#include <string>

namespace liprg {

enum class ErrorKind {
  InvalidGrayTone,
  SingularDenominator,
  UnsupportedScalar,
  EmptyRegion,
  DuplicateMember,
  MissingMember,
  Config,
  Seed,
  Format,
  UnsupportedDepth,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrayTone: return "invalid-gray-tone";
    case ErrorKind::SingularDenominator: return "singular-denominator";
    case ErrorKind::UnsupportedScalar: return "unsupported-scalar";
    case ErrorKind::EmptyRegion: return "empty-region";
    case ErrorKind::DuplicateMember: return "duplicate-member";
    case ErrorKind::MissingMember: return "missing-member";
    case ErrorKind::Config: return "config-error";
    case ErrorKind::Seed: return "seed-error";
    case ErrorKind::Format: return "format-error";
    case ErrorKind::UnsupportedDepth: return "unsupported-depth";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace liprg
