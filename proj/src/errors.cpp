#include "fwave/errors.hpp"

#include <sstream>

namespace fwave {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::not_even: return "NotEven";
    case Errc::slope_too_large: return "SlopeTooLarge";
    case Errc::not_involution: return "NotInvolution";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::zero_scale: return "ZeroScale";
    case Errc::degenerate_family: return "DegenerateFamily";
    case Errc::empty_grid: return "EmptyGrid";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::non_monotone: return "NonMonotone";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::convergence_failure: return "ConvergenceFailure";
    case Errc::residual_failure: return "ResidualFailure";
    case Errc::inadmissible_problem: return "InadmissibleProblem";
    case Errc::unknown_fixture: return "UnknownFixture";
    case Errc::missing_closed_form: return "MissingClosedForm";
    case Errc::bad_params: return "BadParams";
  }
  return "Error";
}

namespace {

std::string format_message(Errc code, const std::string& detail,
                           const std::optional<double>& witness) {
  std::ostringstream os;
  os << errc_name(code) << ": " << detail;
  if (witness) {
    os.precision(17);
    os << " [witness x=" << *witness << "]";
  }
  return os.str();
}

}  // namespace

Error::Error(Errc code, const std::string& detail, std::optional<double> witness)
    : std::runtime_error(format_message(code, detail, witness)),
      code_(code),
      witness_(witness) {}

void raise(Errc code, const std::string& detail, std::optional<double> witness) {
  throw Error(code, detail, witness);
}

}  // namespace fwave
