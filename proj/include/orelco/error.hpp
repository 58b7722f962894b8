#pragma once

#include <stdexcept>
#include <string>

namespace orelco {

enum class ErrorKind {
  parse,             // malformed text input
  invalid_input,     // well-formed but violates a domain invariant
  precondition,      // operation called outside its contract
  budget_exhausted,  // search ran out of budget
  invariant_breach,  // a hard check fired on computed data
  internal           // should be unreachable; indicates a bug
};

/// Exception carrying a machine-readable reason token (e.g. "proper_power")
/// alongside human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string reason, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? reason : reason + ": " + detail),
        kind_(kind),
        reason_(std::move(reason)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorKind kind_;
  std::string reason_;
};

}  // namespace orelco
