#pragma once

#include <stdexcept>
#include <string>

namespace nao {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// invalid input and malformed files are caller errors, degenerate inputs
// are numerical conditions discovered at runtime.
enum class ErrorKind {
  invalid_input,   // bad argument, dimension mismatch, out-of-range flag
  degenerate,      // zero-norm seed, degenerate direction, origin singularity
  ambiguous_arc,   // slerp between (near-)antipodal vectors
  format,          // bad magic/version/truncated file
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
  throw Error(ErrorKind::invalid_input, msg);
}
[[noreturn]] inline void throw_degenerate(const std::string& msg) {
  throw Error(ErrorKind::degenerate, msg);
}

}  // namespace nao
