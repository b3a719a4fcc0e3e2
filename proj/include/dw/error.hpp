#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dw {

/// Domain error carrying a stable machine-readable code such as
/// "OpenBoundary" or "NotACocycle". The CLI reports `code()` verbatim.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

}  // namespace dw
