#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fcpoly {

enum class Errc {
  IndexOutOfRange,
  NoRuleApplies,
  UnsupportedLetter,
  SizeLimit,
  InvalidQuotient,
  NotASphereCandidate,
  UnsupportedDim,
  NonReducible,
  InhomogeneousOperand,
  DegreeMismatch,
  ParseError,
  MalformedInput,
};

const char* errcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(errcName(code)) + ": " + what),
        code_(code),
        position_(position) {}

  Errc code() const noexcept { return code_; }
  // Offending letter position (0 = leftmost) for word errors.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

// Upper bound on N for exhaustive polytope / factorization enumeration.
// Defaults to 8; the FCPOLY_MAX_N environment variable overrides it.
int enumerationLimit();

}  // namespace fcpoly
