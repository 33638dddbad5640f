#pragma once

#include <stdexcept>
#include <string>

namespace relcone {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define RELCONE_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

RELCONE_DEFINE_ERROR(RingMismatch)
RELCONE_DEFINE_ERROR(MulOnAngleQ)
RELCONE_DEFINE_ERROR(ShapeMismatch)
RELCONE_DEFINE_ERROR(DegreeMismatch)
RELCONE_DEFINE_ERROR(InvalidComplex)
RELCONE_DEFINE_ERROR(InvalidChainMap)
RELCONE_DEFINE_ERROR(InvalidHomotopy)
RELCONE_DEFINE_ERROR(UnsupportedRing)
RELCONE_DEFINE_ERROR(NonCommutingSquare)
RELCONE_DEFINE_ERROR(NotACycle)
RELCONE_DEFINE_ERROR(InvalidSimplicialComplex)
RELCONE_DEFINE_ERROR(InvalidSimplicialMap)
RELCONE_DEFINE_ERROR(InconsistentIntersections)
RELCONE_DEFINE_ERROR(InvalidCoverMap)
RELCONE_DEFINE_ERROR(NotACocycle)
RELCONE_DEFINE_ERROR(CoverMismatch)
RELCONE_DEFINE_ERROR(NotClosed)
RELCONE_DEFINE_ERROR(NotIsotropic)
RELCONE_DEFINE_ERROR(NotTrivializable)
RELCONE_DEFINE_ERROR(ParseError)
RELCONE_DEFINE_ERROR(IoError)

#undef RELCONE_DEFINE_ERROR

}  // namespace relcone
