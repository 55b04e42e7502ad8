#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lightcone {

enum class ErrorKind {
  configuration,
  usage,
  domain,
  resolution,
  chart_degeneracy,
  empty_section,
  grid_mismatch,
  blow_up,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. `what()` is a single line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LIGHTCONE_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& message) : Error(ErrorKind::Kind, message) {} \
  }

LIGHTCONE_DEFINE_ERROR(ConfigError, configuration);
LIGHTCONE_DEFINE_ERROR(UsageError, usage);
LIGHTCONE_DEFINE_ERROR(DomainError, domain);
LIGHTCONE_DEFINE_ERROR(ResolutionError, resolution);
LIGHTCONE_DEFINE_ERROR(ChartDegeneracyError, chart_degeneracy);
LIGHTCONE_DEFINE_ERROR(EmptySectionError, empty_section);
LIGHTCONE_DEFINE_ERROR(GridMismatchError, grid_mismatch);
LIGHTCONE_DEFINE_ERROR(BlowUpError, blow_up);
LIGHTCONE_DEFINE_ERROR(IoError, io);

#undef LIGHTCONE_DEFINE_ERROR

}  // namespace lightcone
