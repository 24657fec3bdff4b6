#pragma once

#include <stdexcept>
#include <string>

namespace marg {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };
struct NotTransverse : Error { using Error::Error; };
struct WrongSignature : Error { using Error::Error; };
struct NotDirectSum : Error { using Error::Error; };
struct NotInLieAlgebra : Error { using Error::Error; };
struct NotOrthogonalForForm : Error { using Error::Error; };
struct NegativeDeterminant : Error { using Error::Error; };
struct NotProximal : Error { using Error::Error; };
struct ComplexMidEigenvalues : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NeutralNotSimple : Error { using Error::Error; };
struct BadIntersectionDim : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

}  // namespace marg
