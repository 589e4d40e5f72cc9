#pragma once

#include <stdexcept>
#include <string>

namespace psb {

/// Base class of every error raised by the library. `kind()` is the stable
/// error name used in reports and tests.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(kind + (detail.empty() ? "" : ": " + detail)), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PSB_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& detail = "") : Error(#Name, detail) {} \
  };

PSB_DEFINE_ERROR(DivisionByZero)
PSB_DEFINE_ERROR(DenominatorVanishes)
PSB_DEFINE_ERROR(ParseError)
PSB_DEFINE_ERROR(UnassignedIndeterminate)
PSB_DEFINE_ERROR(RewriteBudgetExceeded)
PSB_DEFINE_ERROR(DegreeOverflow)
PSB_DEFINE_ERROR(Inconsistent)
PSB_DEFINE_ERROR(WindowExceeded)
PSB_DEFINE_ERROR(NotFiltered)
PSB_DEFINE_ERROR(NotUnitalAtE)
PSB_DEFINE_ERROR(SingularComponent)
PSB_DEFINE_ERROR(ValuesNotInM)
PSB_DEFINE_ERROR(SectionUndefined)
PSB_DEFINE_ERROR(NotHomogeneous)
PSB_DEFINE_ERROR(HypothesisFails)
PSB_DEFINE_ERROR(BetaConditionFails)
PSB_DEFINE_ERROR(RepresentativeDependent)
PSB_DEFINE_ERROR(NotInKernel)
PSB_DEFINE_ERROR(CovarianceFails)
PSB_DEFINE_ERROR(SectionIncompatible)
PSB_DEFINE_ERROR(NoConsistentConvention)
PSB_DEFINE_ERROR(ConfigInvalid)

#undef PSB_DEFINE_ERROR

}  // namespace psb
