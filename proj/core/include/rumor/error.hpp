#pragma once

#include <stdexcept>
#include <string>

namespace rumor {

enum class ErrorKind {
  invalid_spec,
  generation_failure,
  out_of_range,
  instance_too_large,
  unsupported,
  degenerate_input,
  empty_sample,
  parse_error,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so that callers (the CLI
// in particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rumor
