#pragma once

#include <stdexcept>
#include <string>

namespace ggdp {

/// Failure category. The numeric value doubles as the CLI exit code.
enum class ErrorKind : int {
  input = 1,        // bad file contents, bad config, failed validation
  computation = 2,  // numerically undefined or out-of-domain operation
  io = 3,           // filesystem or network failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message),
        kind_(kind),
        module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

struct InputError : Error {
  InputError(std::string module, const std::string& message)
      : Error(ErrorKind::input, std::move(module), message) {}
};

struct ComputationError : Error {
  ComputationError(std::string module, const std::string& message)
      : Error(ErrorKind::computation, std::move(module), message) {}
};

struct IoError : Error {
  IoError(std::string module, const std::string& message)
      : Error(ErrorKind::io, std::move(module), message) {}
};

/// Non-2xx response (or no response at all, status 0) from a remote API.
class HttpError : public IoError {
 public:
  HttpError(int status, const std::string& url, const std::string& detail = {})
      : IoError("panel_store", "HTTP " + std::to_string(status) + " for " + url +
                                   (detail.empty() ? "" : ": " + detail)),
        status_(status) {}

  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// A warning attached to a result, tagged with the module that raised it.
struct Warning {
  std::string module;
  std::string message;

  bool operator==(const Warning&) const = default;
};

}  // namespace ggdp
