#pragma once

#include <stdexcept>
#include <string>

namespace fbh {

// Machine-readable failure codes. Codes through NonGenericTarget describe
// violated mathematical preconditions or inputs outside a routine's domain of
// validity (the CLI reports these with exit code 2); Internal marks bugs and
// unexpected states (exit code 1).
enum class Err {
  DimensionMismatch,
  NonFinite,
  NotUnitary,
  NotOrthonormal,
  NotBoundary,
  BranchCut,
  ZeroW,
  PoleAtMinusI,
  PoleAtMinusOne,
  StageMismatch,
  InvalidTransform,
  DoesNotFixQ,
  ScaleConvention,
  AmbiguousFit,
  NotBallAut,
  FitFailed,
  Schema,
  NotProper,
  NotClassifiedForm,
  HypothesisViolated,
  ConstraintResidualLarge,
  StrategyDisagreement,
  NonGenericTarget,
  Internal,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg),
        code_(code) {}

  Err code() const { return code_; }
  const char* code_name() const { return err_name(code_); }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace fbh
