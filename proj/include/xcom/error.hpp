#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace xcom {

enum class ErrorKind {
  Syntax,
  Type,
  Unbound,
  Field,
  DivisionByZero,
  UnknownType,
  Label,
  Machine,
  Diverged,
};

std::string_view kind_name(ErrorKind kind);

struct SourceLoc {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
};

// Every diagnostic raised by the toolkit. Carries a kind so that backends can
// be compared by outcome without comparing message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourceLoc loc = {});

  ErrorKind kind() const { return kind_; }
  const SourceLoc& location() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  SourceLoc loc_;
  std::string message_;
};

}  // namespace xcom
