#pragma once

#include <stdexcept>
#include <string>

namespace plc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* tag() const { return "Error"; }
};

#define PLC_DEFINE_ERROR(Name)                         \
  struct Name : Error {                                \
    using Error::Error;                                \
    const char* tag() const override { return #Name; } \
  }

PLC_DEFINE_ERROR(DimensionMismatch);
PLC_DEFINE_ERROR(NotHermitian);
PLC_DEFINE_ERROR(NotPositiveDefinite);
PLC_DEFINE_ERROR(NotUnitary);
PLC_DEFINE_ERROR(NotCartan);
PLC_DEFINE_ERROR(NotInSG);
PLC_DEFINE_ERROR(ParamOutOfRange);
PLC_DEFINE_ERROR(EvaluationFailed);
PLC_DEFINE_ERROR(SingularDecomposition);
PLC_DEFINE_ERROR(DecompositionFailed);
PLC_DEFINE_ERROR(DegenerateRepresentation);
PLC_DEFINE_ERROR(IllConditioned);
PLC_DEFINE_ERROR(StepSizeUnderflow);
PLC_DEFINE_ERROR(Inconsistent);
PLC_DEFINE_ERROR(ConfigInvalid);

#undef PLC_DEFINE_ERROR

}  // namespace plc
