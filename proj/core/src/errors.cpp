#include "lightcone/errors.hpp"

namespace lightcone {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::usage: return "usage";
    case ErrorKind::domain: return "domain";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::chart_degeneracy: return "chart-degeneracy";
    case ErrorKind::empty_section: return "empty-section";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::blow_up: return "blow-up";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace lightcone
