#include "simulatar/error.hpp"

namespace simulatar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return "config";
    case ErrorKind::Validation:
      return "validation";
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Ingestion:
      return "ingestion";
    case ErrorKind::Geometry:
      return "geometry";
    case ErrorKind::Io:
      return "io";
    case ErrorKind::Assembly:
      return "assembly";
    case ErrorKind::Stats:
      return "stats";
  }
  return "unknown";
}

}  // namespace simulatar
