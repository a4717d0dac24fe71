#pragma once
// Error taxonomy shared by the library and the CLI exit-code mapping:
// ConfigError -> exit 2, CapExceeded -> exit 4. Everything else that is a
// plain precondition violation stays std::invalid_argument / logic_error.

#include <stdexcept>
#include <string>

namespace qperc {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An exact method was asked to run past its instance-size or iteration cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qperc
