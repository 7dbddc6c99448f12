#pragma once

#include <stdexcept>
#include <string>

namespace pseudoherm {

/// Base of every library error. `name()` is the stable identifier printed by
/// the CLI on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define PSEUDOHERM_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                           \
   public:                                                              \
    explicit Type(const std::string& what) : Error(#Type, what) {}      \
  }

PSEUDOHERM_DEFINE_ERROR(InvalidArgument);
PSEUDOHERM_DEFINE_ERROR(DimensionMismatch);
PSEUDOHERM_DEFINE_ERROR(ConvergenceFailure);
PSEUDOHERM_DEFINE_ERROR(OverflowRisk);
PSEUDOHERM_DEFINE_ERROR(NoBracket);
PSEUDOHERM_DEFINE_ERROR(BrokenPhase);
PSEUDOHERM_DEFINE_ERROR(NearDefective);
PSEUDOHERM_DEFINE_ERROR(NotPositiveDefinite);
PSEUDOHERM_DEFINE_ERROR(StepRejected);
PSEUDOHERM_DEFINE_ERROR(GridMismatch);
PSEUDOHERM_DEFINE_ERROR(ParseError);
PSEUDOHERM_DEFINE_ERROR(DimensionError);

#undef PSEUDOHERM_DEFINE_ERROR

}  // namespace pseudoherm
