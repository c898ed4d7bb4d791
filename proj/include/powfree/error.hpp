#pragma once

#include <stdexcept>
#include <string>

namespace powfree {

enum class ErrorCode {
  invalid_argument,
  budget_exceeded,
  no_witness,
  lemma_violation,
  io,
  corrupt,
};

// Every failure raised by the library carries one of the codes above so the
// C boundary can map it onto a stable status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace powfree
