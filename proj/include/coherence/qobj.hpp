#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coherence/numlin.hpp"
#include "coherence/types.hpp"

namespace coherence {

/// Validated quantum state: Hermitian, positive semidefinite, unit trace.
/// The eigendecomposition is computed once at construction and cached;
/// instances are immutable and safe to share across threads.
template <typename Scalar>
class DensityMatrix {
 public:
  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix<Scalar>& matrix() const { return mat_; }

  /// Eigenvalues ascending, clipped to be nonnegative, summing to 1.
  const RealVector<Scalar>& eigenvalues() const { return evals_; }
  /// Unitary whose columns are the corresponding eigenvectors.
  const Matrix<Scalar>& eigenvectors() const { return evecs_; }

  Eigen::Index rank() const { return rank_; }
  bool is_pure() const { return rank_ == 1; }

  /// Projector onto the span of eigenvectors with eigenvalue > zero_tol.
  Matrix<Scalar> support(Scalar zero_tol = Scalar(defaults::zero_tol)) const {
    Matrix<Scalar> q = Matrix<Scalar>::Zero(dim(), dim());
    for (Eigen::Index i = 0; i < evals_.size(); ++i) {
      if (evals_(i) > zero_tol) q += evecs_.col(i) * evecs_.col(i).adjoint();
    }
    return q;
  }

  static DensityMatrix validated(Matrix<Scalar> mat, Scalar zero_tol) {
    const auto es = detail::solve_hermitian(mat);
    RealVector<Scalar> evals = es.eigenvalues();
    if (evals(0) < -zero_tol) {
      throw ValidationError("density matrix has a negative eigenvalue");
    }
    const Scalar tr = evals.sum();
    if (std::abs(tr - Scalar(1)) > Scalar(defaults::trace_tol)) {
      throw ValidationError("density matrix trace is not 1 within tolerance");
    }
    // Renormalize the trace exactly to 1; scaling leaves eigenvectors intact.
    mat /= Complex<Scalar>(tr);
    evals /= tr;
    evals = evals.cwiseMax(Scalar(0));
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
      if (evals(i) > zero_tol) ++rank;
    }
    return DensityMatrix(std::move(mat), std::move(evals), es.eigenvectors(), rank);
  }

 private:
  DensityMatrix(Matrix<Scalar> mat, RealVector<Scalar> evals, Matrix<Scalar> evecs,
                Eigen::Index rank)
      : mat_(std::move(mat)), evals_(std::move(evals)), evecs_(std::move(evecs)), rank_(rank) {}

  Matrix<Scalar> mat_;
  RealVector<Scalar> evals_;
  Matrix<Scalar> evecs_;
  Eigen::Index rank_;
};

using DensityMatrixd = DensityMatrix<double>;

template <typename Derived>
DensityMatrix<RealScalarOf<Derived>> make_density(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> zero_tol = RealScalarOf<Derived>(defaults::zero_tol)) {
  return DensityMatrix<RealScalarOf<Derived>>::validated(hermitize(m), zero_tol);
}

/// Discrete observable as a list of (distinct eigenvalue, orthogonal projector)
/// pairs whose projectors resolve the identity.
template <typename Scalar>
class DiscreteObservable {
 public:
  Eigen::Index dim() const { return dim_; }
  Eigen::Index outcomes() const { return static_cast<Eigen::Index>(projectors_.size()); }
  Scalar label(Eigen::Index l) const { return labels_(l); }
  const RealVector<Scalar>& labels() const { return labels_; }
  const Matrix<Scalar>& projector(Eigen::Index l) const { return projectors_[static_cast<size_t>(l)]; }
  const std::vector<Matrix<Scalar>>& projectors() const { return projectors_; }

  /// The Hermitian operator sum(a_l P_l).
  Matrix<Scalar> matrix() const {
    Matrix<Scalar> out = Matrix<Scalar>::Zero(dim_, dim_);
    for (Eigen::Index l = 0; l < outcomes(); ++l) out += labels_(l) * projectors_[static_cast<size_t>(l)];
    return out;
  }

  static DiscreteObservable validated(std::vector<std::pair<Scalar, Matrix<Scalar>>> pairs,
                                      Scalar tol) {
    if (pairs.empty()) throw ValidationError("observable: at least one outcome required");
    const Eigen::Index dim = pairs.front().second.rows();
    std::vector<Matrix<Scalar>> projectors;
    RealVector<Scalar> labels(static_cast<Eigen::Index>(pairs.size()));
    for (size_t i = 0; i < pairs.size(); ++i) {
      Matrix<Scalar> p = hermitize(pairs[i].second);
      if (p.rows() != dim) throw ValidationError("observable: projector dimension mismatch");
      if ((p * p - p).norm() > tol) {
        throw ValidationError("observable: outcome " + std::to_string(i) + " is not a projector");
      }
      if (p.real().trace() < Scalar(0.5)) {
        throw ValidationError("observable: outcome " + std::to_string(i) + " has a zero projector");
      }
      labels(static_cast<Eigen::Index>(i)) = pairs[i].first;
      projectors.push_back(std::move(p));
    }
    for (size_t i = 0; i < projectors.size(); ++i) {
      for (size_t j = i + 1; j < projectors.size(); ++j) {
        if ((projectors[i] * projectors[j]).norm() > tol) {
          throw ValidationError("observable: projectors are not pairwise orthogonal");
        }
        if (std::abs(labels(static_cast<Eigen::Index>(i)) - labels(static_cast<Eigen::Index>(j))) <=
            Scalar(1e-12)) {
          throw ValidationError("observable: duplicate eigenvalue labels");
        }
      }
    }
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(dim, dim);
    for (const auto& p : projectors) sum += p;
    if ((sum - Matrix<Scalar>::Identity(dim, dim)).norm() > tol * Scalar(dim)) {
      throw ValidationError("observable: projectors do not resolve the identity");
    }
    return DiscreteObservable(std::move(labels), std::move(projectors), dim);
  }

 private:
  DiscreteObservable(RealVector<Scalar> labels, std::vector<Matrix<Scalar>> projectors,
                     Eigen::Index dim)
      : labels_(std::move(labels)), projectors_(std::move(projectors)), dim_(dim) {}

  RealVector<Scalar> labels_;
  std::vector<Matrix<Scalar>> projectors_;
  Eigen::Index dim_;
};

using DiscreteObservabled = DiscreteObservable<double>;

template <typename Scalar>
DiscreteObservable<Scalar> make_observable(std::vector<std::pair<Scalar, Matrix<Scalar>>> pairs,
                                           Scalar tol = Scalar(defaults::projector_tol)) {
  return DiscreteObservable<Scalar>::validated(std::move(pairs), tol);
}

/// Observable read off a Hermitian matrix: distinct clustered eigenvalues as
/// labels with the corresponding eigenprojectors.
template <typename Derived>
DiscreteObservable<RealScalarOf<Derived>> observable_from_matrix(
    const Eigen::MatrixBase<Derived>& m,
    RealScalarOf<Derived> cluster_tol = RealScalarOf<Derived>(defaults::cluster_tol)) {
  using Real = RealScalarOf<Derived>;
  const auto form = spectral_decompose(m, cluster_tol);
  std::vector<std::pair<Real, Matrix<Real>>> pairs;
  for (Eigen::Index k = 0; k < form.outcomes(); ++k) {
    pairs.emplace_back(form.eigenvalues(k), form.projectors[static_cast<size_t>(k)]);
  }
  return make_observable<Real>(std::move(pairs));
}

/// Completes a partial list of (eigenvalue, projector) pairs to a full
/// observable by assigning the leftover subspace the fresh eigenvalue a.
/// Returns the observable unchanged if the pairs already resolve the identity.
template <typename Scalar>
DiscreteObservable<Scalar> complete_with_remainder(
    std::vector<std::pair<Scalar, Matrix<Scalar>>> partial, Scalar a,
    Scalar tol = Scalar(defaults::projector_tol)) {
  if (partial.empty()) throw ValidationError("complete_with_remainder: empty partial form");
  for (const auto& [label, p] : partial) {
    if (std::abs(label - a) <= Scalar(1e-12)) {
      throw ValidationError("complete_with_remainder: eigenvalue collides with an existing label");
    }
    (void)p;
  }
  const Eigen::Index dim = partial.front().second.rows();
  Matrix<Scalar> sum = Matrix<Scalar>::Zero(dim, dim);
  for (const auto& [label, p] : partial) sum += p;
  const Matrix<Scalar> rest = Matrix<Scalar>::Identity(dim, dim) - sum;
  if (rest.norm() > tol) partial.emplace_back(a, rest);
  return make_observable<Scalar>(std::move(partial), tol);
}

/// Probability distribution over measurement outcomes; entries are clipped at
/// zero and renormalized so the invariants stay testable under rounding.
template <typename Scalar>
class ProbabilityVector {
 public:
  explicit ProbabilityVector(RealVector<Scalar> weights) : w_(std::move(weights)) {
    if (w_.size() < 1) throw ValidationError("probability vector must be non-empty");
    for (Eigen::Index i = 0; i < w_.size(); ++i) {
      if (w_(i) < -Scalar(defaults::zero_tol)) {
        throw ValidationError("probability vector has a negative weight");
      }
    }
    w_ = w_.cwiseMax(Scalar(0));
    const Scalar sum = w_.sum();
    if (std::abs(sum - Scalar(1)) > Scalar(defaults::trace_tol)) {
      throw ValidationError("probability vector does not sum to 1 within tolerance");
    }
    w_ /= sum;
  }

  Eigen::Index size() const { return w_.size(); }
  Scalar operator()(Eigen::Index i) const { return w_(i); }
  const RealVector<Scalar>& weights() const { return w_; }

 private:
  RealVector<Scalar> w_;
};

using ProbabilityVectord = ProbabilityVector<double>;

/// Outcome probabilities p_l = tr(rho P_l).
template <typename Scalar>
ProbabilityVector<Scalar> probabilities(const DiscreteObservable<Scalar>& a,
                                        const DensityMatrix<Scalar>& rho) {
  if (a.dim() != rho.dim()) throw ValidationError("probabilities: dimension mismatch");
  RealVector<Scalar> p(a.outcomes());
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    p(l) = (rho.matrix() * a.projector(l)).real().trace();
  }
  return ProbabilityVector<Scalar>(std::move(p));
}

/// Nonselective post-measurement state sum(P_l rho P_l): the block-diagonal
/// pinching of rho by the observable's eigenprojectors.
template <typename Scalar>
DensityMatrix<Scalar> luders_state(const DiscreteObservable<Scalar>& a,
                                   const DensityMatrix<Scalar>& rho,
                                   Scalar zero_tol = Scalar(defaults::zero_tol)) {
  if (a.dim() != rho.dim()) throw ValidationError("luders_state: dimension mismatch");
  Matrix<Scalar> out = Matrix<Scalar>::Zero(rho.dim(), rho.dim());
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    out += a.projector(l) * rho.matrix() * a.projector(l);
  }
  return DensityMatrix<Scalar>::validated(std::move(out), zero_tol);
}

/// State conditioned on outcome l: P_l rho P_l / p_l. Throws
/// UndetectableOutcome when p_l vanishes (the zero convention makes such
/// terms vacuous; callers skip them instead of conditioning).
template <typename Scalar>
DensityMatrix<Scalar> conditional_state(const DiscreteObservable<Scalar>& a,
                                        const DensityMatrix<Scalar>& rho, Eigen::Index l,
                                        Scalar zero_tol = Scalar(defaults::zero_tol)) {
  if (l < 0 || l >= a.outcomes()) throw ValidationError("conditional_state: outcome out of range");
  const Matrix<Scalar> block = a.projector(l) * rho.matrix() * a.projector(l);
  const Scalar p = block.real().trace();
  if (p <= zero_tol) {
    throw UndetectableOutcome("conditional_state: outcome " + std::to_string(l) +
                              " has zero probability");
  }
  return DensityMatrix<Scalar>::validated(block / Complex<Scalar>(p), zero_tol);
}

/// True when every eigenprojector commutes with rho, equivalently [A, rho] = 0.
template <typename Scalar>
bool is_compatible(const DiscreteObservable<Scalar>& a, const DensityMatrix<Scalar>& rho,
                   Scalar tol = Scalar(defaults::compat_tol)) {
  if (a.dim() != rho.dim()) throw ValidationError("is_compatible: dimension mismatch");
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    if (commutator_norm(a.projector(l), rho.matrix()) > tol) return false;
  }
  return true;
}

/// Grouping of outcome indices {0..n-1} into disjoint non-empty classes.
class Partition {
 public:
  Partition(std::vector<std::vector<int>> classes, int n) : classes_(std::move(classes)), n_(n) {
    std::vector<char> seen(static_cast<size_t>(n), 0);
    int covered = 0;
    for (auto& c : classes_) {
      if (c.empty()) throw ValidationError("partition: empty class");
      std::sort(c.begin(), c.end());
      for (int idx : c) {
        if (idx < 0 || idx >= n) throw ValidationError("partition: index out of range");
        if (seen[static_cast<size_t>(idx)]) throw ValidationError("partition: classes overlap");
        seen[static_cast<size_t>(idx)] = 1;
        ++covered;
      }
    }
    if (covered != n) throw ValidationError("partition: classes do not cover the index set");
  }

  static Partition singletons(int n) {
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < n; ++i) classes.push_back({i});
    return Partition(std::move(classes), n);
  }

  static Partition single_class(int n) {
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    return Partition({all}, n);
  }

  int n() const { return n_; }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }

 private:
  std::vector<std::vector<int>> classes_;
  int n_;
};

/// Coarsening of A by a partition: projectors summed per class, labels
/// assigned 0, 1, 2, ... in class order (eigenvalue values play no role here,
/// only the projector structure does).
template <typename Scalar>
DiscreteObservable<Scalar> coarsen(const DiscreteObservable<Scalar>& a, const Partition& part) {
  if (part.n() != static_cast<int>(a.outcomes())) {
    throw ValidationError("coarsen: partition does not match the outcome count");
  }
  std::vector<std::pair<Scalar, Matrix<Scalar>>> pairs;
  Scalar next_label = Scalar(0);
  for (const auto& cls : part.classes()) {
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(a.dim(), a.dim());
    for (int l : cls) sum += a.projector(l);
    pairs.emplace_back(next_label, std::move(sum));
    next_label += Scalar(1);
  }
  return make_observable<Scalar>(std::move(pairs));
}

/// Recovers the partition that exhibits abar as a coarsening of a, or nullopt
/// when no class structure matches. Orthogonality lets each candidate class be
/// read off by absorption (Pbar P_l = P_l) instead of subset enumeration.
template <typename Scalar>
std::optional<Partition> is_coarsening(const DiscreteObservable<Scalar>& abar,
                                       const DiscreteObservable<Scalar>& a,
                                       Scalar tol = Scalar(defaults::projector_tol)) {
  if (abar.dim() != a.dim()) throw ValidationError("is_coarsening: dimension mismatch");
  std::vector<std::vector<int>> classes;
  std::vector<char> used(static_cast<size_t>(a.outcomes()), 0);
  for (Eigen::Index m = 0; m < abar.outcomes(); ++m) {
    std::vector<int> cls;
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(a.dim(), a.dim());
    for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
      if ((abar.projector(m) * a.projector(l) - a.projector(l)).norm() <= tol) {
        if (used[static_cast<size_t>(l)]) return std::nullopt;
        used[static_cast<size_t>(l)] = 1;
        cls.push_back(static_cast<int>(l));
        sum += a.projector(l);
      }
    }
    if (cls.empty() || (sum - abar.projector(m)).norm() > tol * Scalar(a.outcomes())) {
      return std::nullopt;
    }
    classes.push_back(std::move(cls));
  }
  for (char u : used) {
    if (!u) return std::nullopt;
  }
  return Partition(std::move(classes), static_cast<int>(a.outcomes()));
}

/// Observable restricted to a class projector pbar (a sum of A's
/// eigenprojectors): keeps the class members and adds the complement
/// I - pbar under a fresh label. States supported in pbar never detect the
/// remainder outcome.
template <typename Scalar>
DiscreteObservable<Scalar> restrict_to(const DiscreteObservable<Scalar>& a,
                                       const Matrix<Scalar>& pbar,
                                       Scalar tol = Scalar(defaults::projector_tol)) {
  if (pbar.rows() != a.dim() || pbar.cols() != a.dim()) {
    throw ValidationError("restrict_to: dimension mismatch");
  }
  const Matrix<Scalar> p = hermitize(pbar);
  if ((p * p - p).norm() > tol) throw ValidationError("restrict_to: pbar is not a projector");

  std::vector<std::pair<Scalar, Matrix<Scalar>>> pairs;
  Matrix<Scalar> sum = Matrix<Scalar>::Zero(a.dim(), a.dim());
  Scalar max_label = a.label(0);
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    max_label = std::max(max_label, a.label(l));
    const Scalar absorbed = (p * a.projector(l) - a.projector(l)).norm();
    const Scalar annihilated = (p * a.projector(l)).norm();
    if (absorbed <= tol) {
      pairs.emplace_back(a.label(l), a.projector(l));
      sum += a.projector(l);
    } else if (annihilated > tol) {
      throw ValidationError("restrict_to: pbar is not a sum of the observable's projectors");
    }
  }
  if ((sum - p).norm() > tol * Scalar(a.outcomes())) {
    throw ValidationError("restrict_to: pbar is not a sum of the observable's projectors");
  }
  const Matrix<Scalar> rest = Matrix<Scalar>::Identity(a.dim(), a.dim()) - p;
  if (rest.norm() > tol) pairs.emplace_back(max_label + Scalar(1), rest);
  return make_observable<Scalar>(std::move(pairs));
}

}  // namespace coherence
