#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ochoice {

// Machine-readable failure categories. The CLI maps these onto exit codes:
// cap violations exit 3, everything else here exits 1.
enum class Errc {
  InvalidOrder,
  InvalidMass,
  UnknownAlternative,
  ArityMismatch,
  OutOfUnitInterval,
  EmptyGrid,
  NotARepresentation,
  NotOneMistake,
  TooLarge,
  ParseError,
  Internal,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message, std::string location = {})
      : std::runtime_error(std::move(message)), code_(code),
        location_(std::move(location)) {}

  Errc code() const { return code_; }

  // Source position ("line 3, column 7") or a document path ("/rho/0/x"),
  // empty when the error is not tied to an input document.
  const std::string& location() const { return location_; }

private:
  Errc code_;
  std::string location_;
};

[[noreturn]] inline void fail(Errc code, std::string message,
                              std::string location = {}) {
  throw Error(code, std::move(message), std::move(location));
}

} // namespace ochoice
