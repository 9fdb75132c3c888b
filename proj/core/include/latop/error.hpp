#pragma once

#include <stdexcept>
#include <string>

namespace latop {

enum class ErrorKind {
  Input,        // precondition violated by the caller (mismatched windows, dims)
  Size,         // a window or table exceeds a configured cap
  Parse,        // malformed text input
  Unsupported,  // operation not defined for the given boundary policy / format
  Config,       // invalid or unknown configuration key
  Io,           // file system failure
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the categories above so
/// that the CLI can map it to a distinct exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace latop
