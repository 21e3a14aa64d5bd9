#pragma once

#include <stdexcept>
#include <string>

namespace ffiter {

// Domain error carrying a stable machine-readable name. The CLI prints the
// name on stderr and maps any Error to exit code 1.
class Error : public std::runtime_error {
   public:
    Error(std::string name, const std::string& message) : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

   private:
    std::string name_;
};

#define FFITER_DEFINE_ERROR(NAME)                                                     \
    struct NAME : Error {                                                             \
        explicit NAME(const std::string& message = #NAME) : Error(#NAME, message) {}  \
    }

FFITER_DEFINE_ERROR(InvalidField);
FFITER_DEFINE_ERROR(FieldMismatch);
FFITER_DEFINE_ERROR(ZeroInversion);
FFITER_DEFINE_ERROR(ZeroDivision);
FFITER_DEFINE_ERROR(ZeroPolynomial);
FFITER_DEFINE_ERROR(BothZero);
FFITER_DEFINE_ERROR(ConstantModulus);
FFITER_DEFINE_ERROR(ConstantInput);
FFITER_DEFINE_ERROR(NotMonic);
FFITER_DEFINE_ERROR(NotIrreducible);
FFITER_DEFINE_ERROR(PolyIsX);
FFITER_DEFINE_ERROR(FactorizationBudgetExceeded);
FFITER_DEFINE_ERROR(NotCoprime);
FFITER_DEFINE_ERROR(OrderMismatch);
FFITER_DEFINE_ERROR(NormIsSquare);
FFITER_DEFINE_ERROR(NormNonSquare);
FFITER_DEFINE_ERROR(TooLarge);
FFITER_DEFINE_ERROR(EmptyTrace);
FFITER_DEFINE_ERROR(UnsupportedTrace);
FFITER_DEFINE_ERROR(InvalidSweepBase);
FFITER_DEFINE_ERROR(ParseError);
FFITER_DEFINE_ERROR(CoefficientRange);
FFITER_DEFINE_ERROR(InvalidArgument);
FFITER_DEFINE_ERROR(CrossCheckMismatch);

#undef FFITER_DEFINE_ERROR

}  // namespace ffiter
