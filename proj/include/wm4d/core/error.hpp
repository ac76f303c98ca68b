#pragma once

#include <stdexcept>
#include <string>

namespace wm4d {

/// Error with a stable machine-readable kind string ("ShapeError",
/// "DegenerateRig", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool cond, const std::string& kind, const std::string& message) {
  if (!cond) fail(kind, message);
}

}  // namespace wm4d
