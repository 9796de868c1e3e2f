#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "coherence/types.hpp"

namespace coherence {

/// Returns (M + M^dagger)/2 when the asymmetry ||M - M^dagger||_F is within
/// tol * ||M||_F, otherwise throws ValidationError. Tolerates I/O rounding
/// without silently accepting non-Hermitian input.
template <typename Derived>
Matrix<RealScalarOf<Derived>> hermitize(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> tol = RealScalarOf<Derived>(defaults::hermitize_tol)) {
  using Real = RealScalarOf<Derived>;
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ValidationError("hermitize: square matrix of dimension >= 1 required");
  }
  Matrix<Real> mat = m.template cast<Complex<Real>>();
  const Real asym = (mat - mat.adjoint()).norm();
  if (asym > tol * mat.norm()) {
    throw ValidationError("hermitize: matrix is not Hermitian within tolerance");
  }
  return ((mat + mat.adjoint()) / Real(2)).eval();
}

namespace detail {

/// Eigendecomposition of an already-hermitized matrix.
template <typename Scalar>
Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solve_hermitian(const Matrix<Scalar>& herm) {
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(herm);
  if (es.info() != Eigen::Success) {
    throw ValidationError("eigensolver did not converge");
  }
  return es;
}

template <typename Scalar>
void require_psd(const RealVector<Scalar>& evals, Scalar zero_tol, const char* who) {
  if (evals.size() > 0 && evals(0) < -zero_tol) {
    throw ValidationError(std::string(who) + ": matrix has a negative eigenvalue");
  }
}

/// V * diag(f(lambda)) * V^dagger for a scalar map applied eigenvalue-wise.
template <typename Scalar, typename F>
Matrix<Scalar> spectral_map(const Eigen::SelfAdjointEigenSolver<Matrix<Scalar>>& es, F&& f) {
  RealVector<Scalar> mapped = es.eigenvalues();
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(mapped(i));
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Spectral form of a Hermitian matrix in terms of distinct eigenvalues:
/// eigenvalues are descending, one orthogonal projector per cluster,
/// and sum(lambda_k Q_k) reproduces the input.
template <typename Scalar>
struct SpectralForm {
  RealVector<Scalar> eigenvalues;           // distinct, descending
  std::vector<Matrix<Scalar>> projectors;   // pairwise orthogonal, sum to identity
  std::vector<Eigen::Index> multiplicities;
  Eigen::Index dim = 0;

  Eigen::Index outcomes() const { return eigenvalues.size(); }

  Matrix<Scalar> reconstruct() const {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index k = 0; k < outcomes(); ++k) out += eigenvalues(k) * projectors[k];
    return out;
  }
};

/// Eigendecomposition with clustering: eigenvalues closer than cluster_tol
/// (absolute) are merged into a single eigenprojector, so exact degeneracies
/// broken by rounding come back as one cluster.
template <typename Derived>
SpectralForm<RealScalarOf<Derived>> spectral_decompose(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> cluster_tol = RealScalarOf<Derived>(defaults::cluster_tol),
    RealScalarOf<Derived> herm_tol = RealScalarOf<Derived>(defaults::hermitize_tol)) {
  using Real = RealScalarOf<Derived>;
  const Matrix<Real> herm = hermitize(m, herm_tol);
  const auto es = detail::solve_hermitian(herm);
  const RealVector<Real>& evals = es.eigenvalues();  // ascending
  const Eigen::Index n = evals.size();

  SpectralForm<Real> form;
  form.dim = n;
  std::vector<Real> distinct;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    if (i == n || evals(i) - evals(i - 1) > cluster_tol) {
      const Eigen::Index count = i - start;
      const auto block = es.eigenvectors().middleCols(start, count);
      form.projectors.push_back(block * block.adjoint());
      form.multiplicities.push_back(count);
      distinct.push_back(evals.segment(start, count).mean());
      start = i;
    }
  }
  // ascending clusters -> descending output
  std::reverse(form.projectors.begin(), form.projectors.end());
  std::reverse(form.multiplicities.begin(), form.multiplicities.end());
  std::reverse(distinct.begin(), distinct.end());
  form.eigenvalues = Eigen::Map<RealVector<Real>>(distinct.data(), distinct.size());
  return form;
}

/// Orthogonal projector onto the span of eigenvectors with eigenvalue > zero_tol.
template <typename Derived>
Matrix<RealScalarOf<Derived>> support_projector(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> zero_tol = RealScalarOf<Derived>(defaults::zero_tol)) {
  using Real = RealScalarOf<Derived>;
  const auto es = detail::solve_hermitian(hermitize(m));
  detail::require_psd(es.eigenvalues(), zero_tol, "support_projector");
  return detail::spectral_map(es, [zero_tol](Real x) { return x > zero_tol ? Real(1) : Real(0); });
}

/// Operator logarithm extended by zero on the null space: eigenvalues above
/// zero_tol map through log, the rest map to 0.
template <typename Derived>
Matrix<RealScalarOf<Derived>> extended_log(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> zero_tol = RealScalarOf<Derived>(defaults::zero_tol)) {
  using Real = RealScalarOf<Derived>;
  const auto es = detail::solve_hermitian(hermitize(m));
  detail::require_psd(es.eigenvalues(), zero_tol, "extended_log");
  return detail::spectral_map(es, [zero_tol](Real x) { return x > zero_tol ? std::log(x) : Real(0); });
}

/// Eigenvalue-wise fractional power M^p for psd M and 0 < p < 1 (0^p = 0).
template <typename Derived>
Matrix<RealScalarOf<Derived>> matrix_power(
    const Eigen::MatrixBase<Derived>& m, RealScalarOf<Derived> p,
    RealScalarOf<Derived> zero_tol = RealScalarOf<Derived>(defaults::zero_tol)) {
  using Real = RealScalarOf<Derived>;
  if (!(p > Real(0) && p < Real(1))) {
    throw std::domain_error("matrix_power: exponent must lie in (0, 1)");
  }
  const auto es = detail::solve_hermitian(hermitize(m));
  detail::require_psd(es.eigenvalues(), zero_tol, "matrix_power");
  return detail::spectral_map(es, [p, zero_tol](Real x) { return x > zero_tol ? std::pow(x, p) : Real(0); });
}

/// XY - YX. Zero exactly when the operators are compatible.
template <typename DerivedX, typename DerivedY>
Matrix<RealScalarOf<DerivedX>> commutator(const Eigen::MatrixBase<DerivedX>& x,
                                          const Eigen::MatrixBase<DerivedY>& y) {
  using Real = RealScalarOf<DerivedX>;
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
    throw ValidationError("commutator: dimension mismatch");
  }
  const Matrix<Real> xm = x.template cast<Complex<Real>>();
  const Matrix<Real> ym = y.template cast<Complex<Real>>();
  return xm * ym - ym * xm;
}

template <typename DerivedX, typename DerivedY>
RealScalarOf<DerivedX> commutator_norm(const Eigen::MatrixBase<DerivedX>& x,
                                       const Eigen::MatrixBase<DerivedY>& y) {
  return commutator(x, y).norm();
}

}  // namespace coherence
