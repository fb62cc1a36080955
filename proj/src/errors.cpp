#include "fbh/errors.hpp"

namespace fbh {

const char* err_name(Err code) {
  switch (code) {
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NonFinite: return "NonFinite";
    case Err::NotUnitary: return "NotUnitary";
    case Err::NotOrthonormal: return "NotOrthonormal";
    case Err::NotBoundary: return "NotBoundary";
    case Err::BranchCut: return "BranchCut";
    case Err::ZeroW: return "ZeroW";
    case Err::PoleAtMinusI: return "PoleAtMinusI";
    case Err::PoleAtMinusOne: return "PoleAtMinusOne";
    case Err::StageMismatch: return "StageMismatch";
    case Err::InvalidTransform: return "InvalidTransform";
    case Err::DoesNotFixQ: return "DoesNotFixQ";
    case Err::ScaleConvention: return "ScaleConvention";
    case Err::AmbiguousFit: return "AmbiguousFit";
    case Err::NotBallAut: return "NotBallAut";
    case Err::FitFailed: return "FitFailed";
    case Err::Schema: return "Schema";
    case Err::NotProper: return "NotProper";
    case Err::NotClassifiedForm: return "NotClassifiedForm";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::ConstraintResidualLarge: return "ConstraintResidualLarge";
    case Err::StrategyDisagreement: return "StrategyDisagreement";
    case Err::NonGenericTarget: return "NonGenericTarget";
    case Err::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace fbh
