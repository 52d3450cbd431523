#pragma once

#include <stdexcept>
#include <string>

namespace guidyn {

// Failure classes. The CLI maps each to a distinct exit status.
enum class ErrorCategory {
  kConfig,     // invalid parameters or configuration
  kManifest,   // missing or malformed upstream stage manifest
  kIntegrity,  // digest mismatch or corrupted artifact
  kData,       // inputs violate a documented precondition
  kRemote,     // remote endpoint unreachable or misbehaving
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::kConfig, what) {}
};

class ManifestError : public Error {
 public:
  explicit ManifestError(const std::string& what) : Error(ErrorCategory::kManifest, what) {}
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(ErrorCategory::kIntegrity, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::kData, what) {}
};

class RemoteError : public Error {
 public:
  explicit RemoteError(const std::string& what) : Error(ErrorCategory::kRemote, what) {}
};

const char* to_string(ErrorCategory category) noexcept;

}  // namespace guidyn
