#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace circjoin {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (bad sizes, wrong structure).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A dense expansion would exceed the configured dimension cap.
class SizeError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

/// A vector handed in as an eigenvector is not one.
class NotAnEigenpairError : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

/// Base of the numerical failures (exit code 4 in the CLI).
class NumericalError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Null-space dimensions of (M - lambda I)^p did not behave like a Jordan structure.
class IllConditionedError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Maximum absolute row sum.
template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

/// Total order on complex numbers by (real, imaginary).
inline bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace circjoin
