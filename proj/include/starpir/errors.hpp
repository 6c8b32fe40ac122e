#pragma once

#include <stdexcept>

namespace starpir {

// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct ZeroMatrix : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct Inconsistent : Error { using Error::Error; };
struct TrivialDual : Error { using Error::Error; };
struct FullDimension : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct RateZero : Error { using Error::Error; };
struct NoValidJ : Error { using Error::Error; };
struct TooManyFailures : Error { using Error::Error; };
struct NoInformationSet : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NotInformationSet : Error { using Error::Error; };

}  // namespace starpir
