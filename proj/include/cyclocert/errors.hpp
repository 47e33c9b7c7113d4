#pragma once

#include <stdexcept>
#include <string>

namespace cyclocert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CYCLOCERT_ERROR(Name)              \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

CYCLOCERT_ERROR(FactorizationTimeout);
CYCLOCERT_ERROR(InvalidModulus);
CYCLOCERT_ERROR(InfiniteGroup);
CYCLOCERT_ERROR(ModulusMismatch);
CYCLOCERT_ERROR(PreconditionFailed);
CYCLOCERT_ERROR(UnramifiedPrime);
CYCLOCERT_ERROR(GroupTooLarge);
CYCLOCERT_ERROR(InfiniteResult);
CYCLOCERT_ERROR(InvalidModule);
CYCLOCERT_ERROR(NotSquarefree);
CYCLOCERT_ERROR(NotFundamental);
CYCLOCERT_ERROR(DiscriminantMismatch);
CYCLOCERT_ERROR(InconclusiveRounding);
CYCLOCERT_ERROR(ParseError);

#undef CYCLOCERT_ERROR

}  // namespace cyclocert
