#pragma once

#include <stdexcept>
#include <string>

namespace nsplan {

/// Malformed domain file or inconsistent run configuration.
/// The command line tool maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nsplan
