#pragma once

#include <stdexcept>
#include <string>

namespace fibavg {

/// Raised when a caller violates an operation's documented precondition.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact evaluation was requested past the 128-bit representable index.
class index_too_large : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// A generated index or derived quantity left the 64-bit contract.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A file could not be read or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scan checkpoint could not be used to resume.
class checkpoint_error : public std::runtime_error {
 public:
  enum class reason { corrupt, schema_mismatch, kind_mismatch, range_mismatch };

  checkpoint_error(reason r, const std::string& what)
      : std::runtime_error(what), reason_(r) {}

  reason why() const noexcept { return reason_; }

 private:
  reason reason_;
};

}  // namespace fibavg
