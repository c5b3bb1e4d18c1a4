#pragma once

#include <stdexcept>
#include <string>

namespace mcluster {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QuiverErrorKind { malformed, cyclic, non_dynkin, disconnected };

inline const char* to_string(QuiverErrorKind kind) {
  switch (kind) {
    case QuiverErrorKind::malformed: return "malformed";
    case QuiverErrorKind::cyclic: return "cyclic";
    case QuiverErrorKind::non_dynkin: return "non-dynkin";
    case QuiverErrorKind::disconnected: return "disconnected";
  }
  return "unknown";
}

class QuiverError : public Error {
 public:
  QuiverError(QuiverErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  QuiverErrorKind kind() const noexcept { return kind_; }

 private:
  QuiverErrorKind kind_;
};

// A caller violated a documented precondition (wrong sizes, non-rigid input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The result of a construction would leave the configured shift window.
class WindowOverflow : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; always indicates a bug or a modeling error.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (clique count, search size) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace mcluster
