#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace shiftsolve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

/// A mathematical hypothesis of the problem does not hold for the input
/// (orthogonality violated, contraction constant too large, ...). The CLI
/// maps every subclass to exit status 2.
class HypothesisError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "HypothesisError"; }
};

/// Resonant shift and f^(+-sqrt(a)) not below the orthogonality tolerance.
class ResonantNotSolvable : public HypothesisError {
public:
    ResonantNotSolvable(std::complex<double> fhat_plus, std::complex<double> fhat_minus,
                        double tolerance);
    const char* kind() const noexcept override { return "ResonantNotSolvable"; }

    std::complex<double> fhat_plus;
    std::complex<double> fhat_minus;
    double tolerance;
};

/// Resonant shift and the kernel is not orthogonal to e^{+-i sqrt(a) x}:
/// the stability constant is infinite.
class NotFinite : public HypothesisError {
public:
    NotFinite(std::complex<double> ghat_plus, std::complex<double> ghat_minus, double tolerance);
    const char* kind() const noexcept override { return "NotFinite"; }

    std::complex<double> ghat_plus;
    std::complex<double> ghat_minus;
    double tolerance;
};

/// 2 sqrt(pi) N l >= 1 (or >= 1 - eps for a sequence member).
class ContractionHypothesisFailed : public HypothesisError {
public:
    ContractionHypothesisFailed(double q, double limit);
    const char* kind() const noexcept override { return "ContractionHypothesisFailed"; }

    double q;
    double limit;
};

/// A member of an approximating sequence violates a per-member hypothesis.
class SequenceMemberInvalid : public HypothesisError {
public:
    SequenceMemberInvalid(int member, const std::string& what);
    const char* kind() const noexcept override { return "SequenceMemberInvalid"; }

    int member;
};

/// Numerical pathology that should not happen when the hypotheses hold.
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "NumericalError"; }
};

class NearSingularGrid : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "NearSingularGrid"; }
};

class MaxIterExceeded : public NumericalError {
public:
    MaxIterExceeded(int iterations, double last_step);
    const char* kind() const noexcept override { return "MaxIterExceeded"; }

    int iterations;
    double last_step;
};

class GridMismatch : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "GridMismatch"; }
};

}  // namespace shiftsolve
