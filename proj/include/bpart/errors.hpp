#pragma once

#include <stdexcept>
#include <string>

namespace bpart {

enum class ErrorKind {
  Domain,
  Rationality,
  Parse,
  Certification,
  Resource,
  Tolerance,
  Bracket,
  MissingBound,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. Carries the originating module
/// so the CLI can render a uniform envelope.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(message), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

#define BPART_DEFINE_ERROR(Name, Kind)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    Name(std::string module, const std::string& message)                 \
        : Error(ErrorKind::Kind, std::move(module), message) {}          \
  };

BPART_DEFINE_ERROR(DomainError, Domain)
BPART_DEFINE_ERROR(RationalityError, Rationality)
BPART_DEFINE_ERROR(ParseError, Parse)
BPART_DEFINE_ERROR(CertificationError, Certification)
BPART_DEFINE_ERROR(ResourceError, Resource)
BPART_DEFINE_ERROR(ToleranceError, Tolerance)
BPART_DEFINE_ERROR(BracketError, Bracket)
BPART_DEFINE_ERROR(MissingBoundError, MissingBound)

#undef BPART_DEFINE_ERROR

}  // namespace bpart
