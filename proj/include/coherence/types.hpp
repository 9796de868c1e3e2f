#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace coherence {

template <typename Scalar>
using Complex = std::complex<Scalar>;

/// Dense complex matrix over a real scalar type.
template <typename Scalar>
using Matrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complexd = Complex<double>;
using Matrixd = Matrix<double>;
using Vectord = Vector<double>;
using RealVectord = RealVector<double>;

template <typename Derived>
using RealScalarOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

namespace defaults {
// Relative asymmetry accepted before an input stops counting as Hermitian.
inline constexpr double hermitize_tol = 1e-8;
// Absolute width within which eigenvalues collapse to one spectral cluster.
inline constexpr double cluster_tol = 1e-8;
// Eigenvalues at or below this count as exactly zero after trace normalization.
inline constexpr double zero_tol = 1e-10;
// Trace mass allowed outside a support before containment is rejected.
inline constexpr double support_tol = 1e-9;
// Unit-trace validation slack for density matrices.
inline constexpr double trace_tol = 1e-8;
// Commutator Frobenius norm below which two operators count as commuting.
inline constexpr double compat_tol = 1e-8;
// Structural slack for projector validation (idempotency, orthogonality).
inline constexpr double projector_tol = 1e-8;
}  // namespace defaults

/// An input matrix or vector failed a structural invariant
/// (not Hermitian, not positive semidefinite, wrong trace, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measurement outcome with zero probability was conditioned on.
class UndetectableOutcome : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace coherence
