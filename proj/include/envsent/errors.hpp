#ifndef ENVSENT_ERRORS_HPP_
#define ENVSENT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace envsent {

// Bad configuration: missing resource files, invalid option values.
// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input data or model files. The CLI maps this to exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally broken file (model checksum, lexicon syntax).
class FormatError : public DataError {
 public:
  explicit FormatError(const std::string& msg) : DataError(msg) {}
};

}  // namespace envsent

#endif  // ENVSENT_ERRORS_HPP_
