#pragma once

#include <functional>
#include <string>
#include <vector>

namespace caustic {

// Non-fatal warnings (domain too small, envelope close to the boundary, ...).
// The default handler prints to stderr; tests install their own to capture.
using WarningHandler = std::function<void(const std::string&)>;

void warn(const std::string& message);

// Returns the previously installed handler.
WarningHandler set_warning_handler(WarningHandler handler);

// RAII guard that collects warnings for its lifetime.
class ScopedWarningCapture {
public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
  WarningHandler previous_;
};

}  // namespace caustic
