#include "polar/errors.hpp"

namespace polar {

std::string_view errcName(Errc code) {
  switch (code) {
    case Errc::NonFiniteInput: return "NonFiniteInput";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::DifferentComponents: return "DifferentComponents";
    case Errc::NonUniqueGeodesic: return "NonUniqueGeodesic";
    case Errc::PhaseAtPi: return "PhaseAtPi";
    case Errc::ZeroMatrix: return "ZeroMatrix";
    case Errc::StepOutsideInjectivity: return "StepOutsideInjectivity";
    case Errc::SingularInput: return "SingularInput";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace polar
