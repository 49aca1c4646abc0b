#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qstab {

enum class ErrorKind {
  DimensionMismatch,
  InconsistentValues,
  NotFree,
  NotIsotropic,
  NotLagrangian,
  NotFreeSymplectic,
  Degenerate,
  NotSymplectic,
  NotAbelian,
  ContainsScalar,
  InconsistentCharacter,
  TooLarge,
  BadSurface,
  Disconnected,
  OddEuler,
  NotAPath,
  NotADualPath,
  BadSplit,
  PathMismatch,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InconsistentValues: return "InconsistentValues";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::NotLagrangian: return "NotLagrangian";
    case ErrorKind::NotFreeSymplectic: return "NotFreeSymplectic";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::ContainsScalar: return "ContainsScalar";
    case ErrorKind::InconsistentCharacter: return "InconsistentCharacter";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadSurface: return "BadSurface";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::OddEuler: return "OddEuler";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::NotADualPath: return "NotADualPath";
    case ErrorKind::BadSplit: return "BadSplit";
    case ErrorKind::PathMismatch: return "PathMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `detail` carries a machine-readable
/// witness where one exists (the offending generator pair for NotAbelian,
/// the relation vector for ContainsScalar).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::int64_t> detail = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::int64_t>& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::vector<std::int64_t> detail_;
};

}  // namespace qstab
