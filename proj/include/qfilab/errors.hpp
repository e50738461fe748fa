#pragma once

#include <stdexcept>

namespace qfilab {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QFILAB_ERROR_TYPE(Name) \
  struct Name : Error {         \
    using Error::Error;         \
  }

QFILAB_ERROR_TYPE(NotHermitian);
QFILAB_ERROR_TYPE(DimensionMismatch);
QFILAB_ERROR_TYPE(InvalidRank);
QFILAB_ERROR_TYPE(InvalidSpectrum);
QFILAB_ERROR_TYPE(SizeTooSmall);
QFILAB_ERROR_TYPE(BadDecomposition);
QFILAB_ERROR_TYPE(InternalMismatch);
QFILAB_ERROR_TYPE(SingularState);
QFILAB_ERROR_TYPE(NotRankTwo);
QFILAB_ERROR_TYPE(TooLarge);
QFILAB_ERROR_TYPE(DegenerateGradient);
QFILAB_ERROR_TYPE(TargetOutOfRange);
QFILAB_ERROR_TYPE(SupportViolation);
QFILAB_ERROR_TYPE(StepTooLarge);
QFILAB_ERROR_TYPE(NotInSubspace);
QFILAB_ERROR_TYPE(TooManyQubits);
QFILAB_ERROR_TYPE(UnknownSuite);
QFILAB_ERROR_TYPE(UnknownFigure);
QFILAB_ERROR_TYPE(IoError);
QFILAB_ERROR_TYPE(ParseError);

#undef QFILAB_ERROR_TYPE

}  // namespace qfilab
