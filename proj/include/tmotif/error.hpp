#pragma once

#include <stdexcept>
#include <string>

namespace tmotif {

enum class ErrorKind {
  kParse,        // malformed input text
  kConfig,       // invalid parameters
  kDomain,       // argument outside an operation's domain
  kOverflow,     // checked arithmetic overflowed
  kStreamOrder,  // streamed edges not sorted by time
  kBudget,       // oracle work budget exceeded
  kUsage,        // operation not applicable to the given motif
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tmotif
