#pragma once

#include <stdexcept>
#include <string>

namespace jamwatch {

/// Base of every error thrown by the library. `kind()` is a stable,
/// machine-parsable tag used by the CLI error line.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define JAMWATCH_DEFINE_ERROR(Name, tag)                                   \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(tag, what) {}          \
  };

JAMWATCH_DEFINE_ERROR(ConfigError, "config")
JAMWATCH_DEFINE_ERROR(LengthError, "length")
JAMWATCH_DEFINE_ERROR(FormatError, "format")
JAMWATCH_DEFINE_ERROR(ShapeError, "shape")
JAMWATCH_DEFINE_ERROR(StateError, "state")
JAMWATCH_DEFINE_ERROR(ArgumentError, "argument")
JAMWATCH_DEFINE_ERROR(TrainingError, "training")
JAMWATCH_DEFINE_ERROR(SourceError, "source")

#undef JAMWATCH_DEFINE_ERROR

}  // namespace jamwatch
