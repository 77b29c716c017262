#pragma once

#include <stdexcept>
#include <string>

namespace lscd {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad magic, truncated matrix, unparsable JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation (zero vector,
/// zero centroid, rank-deficient PCA). Per-word pipelines skip the word.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid combination of user-supplied options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lscd
