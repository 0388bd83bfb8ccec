#ifndef TLSPH_ERRORS_HPP
#define TLSPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tlsph {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  DegenerateGeometry,
  InvertedElement,
  NumericalFailure,
  Io,
};

/// Solver failure carrying a machine-readable kind for the C API mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

} // namespace tlsph

#endif // TLSPH_ERRORS_HPP
