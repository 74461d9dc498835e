#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace rdsim {

/// Invalid configuration or out-of-domain argument. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The sampling process ran out of eligible nodes. CLI exit code 3.
class ProcessExhaustedError : public std::runtime_error {
 public:
  explicit ProcessExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested report slice has no coverage. CLI exit code 3.
class MissingSliceError : public std::runtime_error {
 public:
  explicit MissingSliceError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem or serialization failure. CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; message carries the line number.
class FormatError : public IoError {
 public:
  explicit FormatError(const std::string& what) : IoError(what) {}
};

/// Non-fatal warning sink. Defaults to stderr; tests may capture.
void set_warning_handler(std::function<void(const std::string&)> handler);
void warn(const std::string& message);

}  // namespace rdsim
