#pragma once

#include <stdexcept>
#include <string>

namespace hcmu {

// Base class for all domain failures raised by the library. CLI maps these
// to exit code 1; anything else (parse errors, bad usage) is exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// one-form construction / evaluation
struct TooFewPoles final : Error { using Error::Error; };
struct DuplicatePole final : Error { using Error::Error; };
struct ZeroResidue final : Error { using Error::Error; };
struct ResidueSumNonzero final : Error { using Error::Error; };
struct EvaluationAtPole final : Error { using Error::Error; };
struct RootFindingFailure final : Error { using Error::Error; };
struct AmbiguousContour final : Error { using Error::Error; };

// plan feasibility / synthesis
struct NoMaxima final : Error { using Error::Error; };
struct SaddleCountMismatch final : Error { using Error::Error; };
struct SynthesisUnsupported final : Error { using Error::Error; };
struct DegenerateConfiguration final : Error { using Error::Error; };

// curvature solver
struct DomainError final : Error { using Error::Error; };
struct ConvergenceFailure final : Error { using Error::Error; };
struct BadNormalization final : Error { using Error::Error; };

// classification / verification
struct UnclassifiablePole final : Error { using Error::Error; };
struct StencilTooClose final : Error { using Error::Error; };
struct RadiusTooLarge final : Error { using Error::Error; };
struct NotACusp final : Error { using Error::Error; };
struct QuadratureBudgetExceeded final : Error { using Error::Error; };

}  // namespace hcmu
