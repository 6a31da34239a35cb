#pragma once

#include <stdexcept>
#include <string>

namespace evoarena {

// Invalid configuration: bad flag value, impossible arena layout, sigma <= 0, ...
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while reading or writing run artifacts.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace evoarena
