#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace srs {

// Exception carrying a stable machine-readable code alongside the message.
// The CLI maps these to error JSON and a nonzero exit.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline void require(bool condition, const char* code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace srs
