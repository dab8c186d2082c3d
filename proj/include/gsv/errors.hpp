#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsv {

// Base of every error thrown by the library. Callers that only care about
// "the computation failed" catch this; the CLI maps subclasses to verdicts.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define GSV_DEFINE_ERROR(Name)                                                 \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

GSV_DEFINE_ERROR(NotDivisible);
GSV_DEFINE_ERROR(NonMinorDenominator);
GSV_DEFINE_ERROR(SingularSpecialization);
GSV_DEFINE_ERROR(ShapeMismatch);
GSV_DEFINE_ERROR(InvalidSpec);
GSV_DEFINE_ERROR(PreconditionViolation);
GSV_DEFINE_ERROR(NotOnVariety);
GSV_DEFINE_ERROR(NotOrthonormalRows);
GSV_DEFINE_ERROR(NotUnit);
GSV_DEFINE_ERROR(SingularGroupElement);
GSV_DEFINE_ERROR(DegenerateComplement);
GSV_DEFINE_ERROR(NonTrivialCanonicalWeight);
GSV_DEFINE_ERROR(NonTrivialSigmaWeight);
GSV_DEFINE_ERROR(BudgetExceeded);

#undef GSV_DEFINE_ERROR

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace gsv
