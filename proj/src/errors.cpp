#include "hyperips/errors.hpp"

namespace hyperips {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DuplicateRule: return "DuplicateRule";
        case Errc::MalformedRule: return "MalformedRule";
        case Errc::StateNotInSpace: return "StateNotInSpace";
        case Errc::OrderTooHigh: return "OrderTooHigh";
        case Errc::StepUnderflow: return "StepUnderflow";
        case Errc::SimplexViolation: return "SimplexViolation";
        case Errc::ParameterDomain: return "ParameterDomain";
        case Errc::InfeasibleRegular: return "InfeasibleRegular";
        case Errc::EmptyGraph: return "EmptyGraph";
        case Errc::NegativeRate: return "NegativeRate";
        case Errc::TooLarge: return "TooLarge";
        case Errc::StateSpaceTooLarge: return "StateSpaceTooLarge";
        case Errc::EmptySubset: return "EmptySubset";
        case Errc::MotifTooLarge: return "MotifTooLarge";
        case Errc::RequiresSymmetric: return "RequiresSymmetric";
        case Errc::RequiresUnweighted: return "RequiresUnweighted";
        case Errc::SpecInvalid: return "SpecInvalid";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace hyperips
