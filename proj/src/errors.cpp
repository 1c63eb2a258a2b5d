#include "flist/errors.hpp"

namespace flist {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Decay: return "DecayError";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorKind::SpectralSingularity: return "SpectralSingularity";
    case ErrorKind::InsufficientRange: return "InsufficientRange";
    case ErrorKind::WindingMismatch: return "WindingMismatch";
    case ErrorKind::MultipleZero: return "MultipleZero";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::ContourProximity: return "ContourProximity";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::WrongSolitonCount: return "WrongSolitonCount";
    case ErrorKind::OriginSingularity: return "OriginSingularity";
    case ErrorKind::DegenerateCone: return "DegenerateCone";
    case ErrorKind::GammaOverflow: return "GammaOverflow";
    case ErrorKind::OutsideCone: return "OutsideCone";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::StabilityViolation: return "StabilityViolation";
  }
  return "UnknownError";
}

void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(error_name(kind)) + ": " + what);
}

}  // namespace flist
