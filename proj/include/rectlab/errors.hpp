#pragma once

#include <stdexcept>
#include <string>

namespace rectlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RECTLAB_DEFINE_ERROR(Name)              \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(std::string(#Name ": ") + what) {} \
  };

RECTLAB_DEFINE_ERROR(ZeroDenominator)
RECTLAB_DEFINE_ERROR(DenominatorVanishes)
RECTLAB_DEFINE_ERROR(PoleAtQOne)
RECTLAB_DEFINE_ERROR(ParseError)
RECTLAB_DEFINE_ERROR(ContextMismatch)
RECTLAB_DEFINE_ERROR(UnsupportedDegree)
RECTLAB_DEFINE_ERROR(DegreeMismatch)
RECTLAB_DEFINE_ERROR(SingularTransition)
RECTLAB_DEFINE_ERROR(SingularEigenvalue)
RECTLAB_DEFINE_ERROR(InvalidPath)
RECTLAB_DEFINE_ERROR(InconsistentCdinv)
RECTLAB_DEFINE_ERROR(BudgetExceeded)
RECTLAB_DEFINE_ERROR(NotCoprime)
RECTLAB_DEFINE_ERROR(IndexOutOfRange)

#undef RECTLAB_DEFINE_ERROR

}  // namespace rectlab
