#ifndef MAGHARDEN_ERRORS_HPP
#define MAGHARDEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magharden {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad grid size, missing coefficients, ...).
struct InvalidInput : Error {
  using Error::Error;
};

// Raised when an operation requires <Im a> = 0 and the potential violates it;
// no bounded positive metric exists in that case.
struct NotQuasiSelfAdjoint : Error {
  explicit NotQuasiSelfAdjoint(double mean_im)
      : Error("potential is not quasi-self-adjoint: <Im a> = " +
              std::to_string(mean_im)),
        mean_im(mean_im) {}
  double mean_im;
};

// A flux hypothesis gate failed (integer real flux and zero imaginary flux).
struct FluxConditionFailed : Error {
  using Error::Error;
};

// Decay hypothesis on Im A violated, or k_R >= 1/2 at every tested radius.
struct HypothesisViolated : Error {
  using Error::Error;
};

// B identically zero: no robust Hardy inequality can be certified.
struct TrivialField : Error {
  using Error::Error;
};

// The field's support is not contained in the disk D_R handed to the
// compact-support Hardy construction.
struct SupportExceedsR : Error {
  using Error::Error;
};

// An iterative solver or refinement loop failed to settle.
struct NonConvergence : Error {
  using Error::Error;
};

}  // namespace magharden

#endif
