#pragma once

#include <stdexcept>
#include <string>

namespace geoprint {

enum class ErrorKind {
  InvalidArgument,
  Infeasible,   // fewer printable pixels than cells
  EmptyImage,
  Clearance,    // robot starts violate the 2*sqrt(2)*r separation bound
  Parse,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace geoprint
