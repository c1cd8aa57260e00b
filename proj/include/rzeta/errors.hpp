#pragma once
#include <stdexcept>
#include <string>

namespace rzeta {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroInverse : Error { ZeroInverse() : Error("inverse of zero") {} };
struct BadLevel : Error { using Error::Error; };
struct NotAntisymmetric : Error { NotAntisymmetric() : Error("matrix is not antisymmetric") {} };
struct DimensionMismatch : Error { using Error::Error; };
struct NonZeroTrace : Error { NonZeroTrace() : Error("matrix has nonzero trace") {} };
struct NotSubalgebra : Error { NotSubalgebra() : Error("subspace is not bracket-closed") {} };
struct UnexpectedDimension : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct NonDivisible : Error { using Error::Error; };
struct ZeroDenominator : Error { ZeroDenominator() : Error("zero denominator") {} };
struct NotPalindromic : Error { NotPalindromic() : Error("polynomial is not palindromic") {} };
struct MissingTransition : Error { using Error::Error; };

}  // namespace rzeta
