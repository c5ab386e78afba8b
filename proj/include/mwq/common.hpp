#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mwq {

// Error taxonomy; the CLI maps kinds to exit codes.
enum class ErrorKind {
  Parse,         // syntax errors, bad CSV, bad flags
  Validation,    // well-formedness violations (guardedness, reserved names, ...)
  Inconsistent,  // bottom derivable at a named individual
  Refusal,       // guarded operation declined (oracle depth/size limits)
  Internal,      // invariant violation; a bug
};

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  std::string str() const {
    if (line == 0) return file;
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, std::string message, SourceLocation loc)
      : std::runtime_error(loc.str() + ": " + message),
        kind_(kind),
        loc_(std::move(loc)),
        has_loc_(true) {}

  ErrorKind kind() const { return kind_; }
  bool has_location() const { return has_loc_; }
  const SourceLocation& location() const { return loc_; }

 private:
  ErrorKind kind_;
  SourceLocation loc_;
  bool has_loc_ = false;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

// Strong ids for the three name kinds. 0 and 1 are the reserved concepts.
using ConceptId = uint32_t;
using RoleId = uint32_t;
using IndividualId = uint32_t;

inline constexpr ConceptId kTop = 0;
inline constexpr ConceptId kBot = 1;

}  // namespace mwq
