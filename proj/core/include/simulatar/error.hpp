#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simulatar {

/// Broad failure categories. The CLI maps these onto its exit codes and the
/// service onto HTTP statuses, so every thrown error carries exactly one.
enum class ErrorKind {
  Config,      // unreadable or malformed configuration / manifest
  Validation,  // well-formed input violating a documented invariant
  Domain,      // numeric argument outside its mathematical domain
  Ingestion,   // frame sequence missing, gapped or inconsistent
  Geometry,    // display/camera combination that cannot be simulated
  Io,          // filesystem or codec failure
  Assembly,    // external transcoder failure
  Stats,       // insufficient or degenerate data for a statistical test
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error(ErrorKind::Config, message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(ErrorKind::Validation, message) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error(ErrorKind::Domain, message) {}
};

class IngestionError : public Error {
 public:
  explicit IngestionError(const std::string& message) : Error(ErrorKind::Ingestion, message) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& message) : Error(ErrorKind::Geometry, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::Io, message) {}
};

class AssemblyError : public Error {
 public:
  AssemblyError(const std::string& message, std::string diagnostics)
      : Error(ErrorKind::Assembly, message), diagnostics_(std::move(diagnostics)) {}

  [[nodiscard]] const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

class StatsError : public Error {
 public:
  enum class Reason { InsufficientData, DegenerateVariance };

  StatsError(Reason reason, const std::string& message)
      : Error(ErrorKind::Stats, message), reason_(reason) {}

  [[nodiscard]] Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

}  // namespace simulatar
