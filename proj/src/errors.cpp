#include "shiftsolve/errors.hpp"

#include <sstream>

namespace shiftsolve {

namespace {

std::string describe(const char* what, const char* name, std::complex<double> plus, std::complex<double> minus,
                     double tol) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": |" << name << "(+sqrt(a))| = " << std::abs(plus) << ", |" << name
       << "(-sqrt(a))| = " << std::abs(minus) << ", tolerance " << tol;
    return os.str();
}

}  // namespace

ResonantNotSolvable::ResonantNotSolvable(std::complex<double> plus, std::complex<double> minus, double tol)
    : HypothesisError(describe("orthogonality conditions violated in the resonant case", "f^", plus, minus, tol)),
      fhat_plus(plus),
      fhat_minus(minus),
      tolerance(tol) {}

NotFinite::NotFinite(std::complex<double> plus, std::complex<double> minus, double tol)
    : HypothesisError(describe("kernel orthogonality violated in the resonant case; stability constant is infinite",
                               "G^", plus, minus, tol)),
      ghat_plus(plus),
      ghat_minus(minus),
      tolerance(tol) {}

ContractionHypothesisFailed::ContractionHypothesisFailed(double q_value, double limit_value)
    : HypothesisError("contraction hypothesis failed: 2 sqrt(pi) N l = " + std::to_string(q_value) +
                      " is not below " + std::to_string(limit_value)),
      q(q_value),
      limit(limit_value) {}

SequenceMemberInvalid::SequenceMemberInvalid(int m, const std::string& what)
    : HypothesisError("sequence member m = " + std::to_string(m) + ": " + what), member(m) {}

MaxIterExceeded::MaxIterExceeded(int iters, double step)
    : NumericalError("fixed-point iteration did not converge in " + std::to_string(iters) +
                     " iterations (last H2 step " + std::to_string(step) + ")"),
      iterations(iters),
      last_step(step) {}

}  // namespace shiftsolve
