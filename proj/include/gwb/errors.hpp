#pragma once

#include <stdexcept>
#include <string>

namespace gwb {

/// Base of all workbench errors. `code()` is a stable machine-readable name.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Malformed or inconsistent input: a precondition of an operation failed.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or closure would exceed a configured size cap.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message) : Error("ResourceLimit", message) {}
};

/// A mathematical negative that is reported through an exception (for
/// example a requested idempotent whose normalising order is not a unit).
class MathematicalNegative : public Error {
 public:
  using Error::Error;
};

#define GWB_INPUT_ERROR(Name)                                                   \
  class Name : public InputError {                                              \
   public:                                                                      \
    explicit Name(const std::string& message) : InputError(#Name, message) {}   \
  }

GWB_INPUT_ERROR(AxiomViolation);
GWB_INPUT_ERROR(UnknownUnit);
GWB_INPUT_ERROR(IndexOutOfRange);
GWB_INPUT_ERROR(NotABisection);
GWB_INPUT_ERROR(NotSubgroupoid);
GWB_INPUT_ERROR(NotIncreasing);
GWB_INPUT_ERROR(UnionIncomplete);
GWB_INPUT_ERROR(UnsupportedRing);
GWB_INPUT_ERROR(NotInRing);
GWB_INPUT_ERROR(NotAComplex);
GWB_INPUT_ERROR(RingMismatch);
GWB_INPUT_ERROR(AmbientMismatch);
GWB_INPUT_ERROR(UnknownMap);
GWB_INPUT_ERROR(CoverFailure);
GWB_INPUT_ERROR(NotFull);
GWB_INPUT_ERROR(NotGroupBundle);
GWB_INPUT_ERROR(FunctorialityViolation);
GWB_INPUT_ERROR(NotInvariant);
GWB_INPUT_ERROR(IncompatibleModules);
GWB_INPUT_ERROR(Malformed);
GWB_INPUT_ERROR(SourceVertex);
GWB_INPUT_ERROR(DepthExceeded);
GWB_INPUT_ERROR(DimensionMismatch);

#undef GWB_INPUT_ERROR

class OrderNotInvertible : public MathematicalNegative {
 public:
  explicit OrderNotInvertible(const std::string& order)
      : MathematicalNegative("OrderNotInvertible", "group order " + order + " is not a unit"),
        order_(order) {}
  const std::string& order() const { return order_; }

 private:
  std::string order_;
};

}  // namespace gwb
