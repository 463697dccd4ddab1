#pragma once

#include <stdexcept>
#include <string>

namespace cbiem {

enum class ErrorKind {
  InvalidArgument,
  NumericalFailure,
  GeometryDegenerate,
  LocationDegenerate,
};

// Single exception type for the library; the C API maps `kind()` onto
// status codes and the CLI maps it onto exit codes.
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

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace cbiem
