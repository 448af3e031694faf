#include "xcom/error.hpp"

namespace xcom {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Type: return "type error";
    case ErrorKind::Unbound: return "unbound variable";
    case ErrorKind::Field: return "field error";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::UnknownType: return "unknown type";
    case ErrorKind::Label: return "label error";
    case ErrorKind::Machine: return "machine error";
    case ErrorKind::Diverged: return "diverged";
  }
  return "error";
}

namespace {
std::string decorate(const std::string& message, SourceLoc loc) {
  if (!loc.known()) return message;
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, SourceLoc loc)
    : std::runtime_error(decorate(message, loc)), kind_(kind), loc_(loc), message_(message) {}

}  // namespace xcom
