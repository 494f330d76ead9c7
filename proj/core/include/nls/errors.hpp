#pragma once

#include <stdexcept>
#include <string>

namespace nls {

struct GridError : std::runtime_error {
  explicit GridError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a field carries too much energy near the edge of the
// resolvable box (outer radii or top of the dual band).
struct AliasingError : std::runtime_error {
  explicit AliasingError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// Concentration is not scale-separated: the exterior mass profile never
// flattens, so no excision radius can be certified.
struct NoPlateau : std::runtime_error {
  explicit NoPlateau(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the time stepper when a state trips the resolution guard or the
// gradient cap; callers running with surgery enabled treat it as a breakdown
// signal rather than a fatal error.
struct BlowupSuspected : std::runtime_error {
  explicit BlowupSuspected(const std::string& msg) : std::runtime_error(msg) {}
};

struct MaxEventsExceeded : std::runtime_error {
  explicit MaxEventsExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nls
