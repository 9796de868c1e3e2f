#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "coherence/entropy.hpp"

namespace coherence {

/// Uncertainty of A in rho: the Shannon entropy of the outcome distribution.
template <typename Scalar>
Scalar uncertainty(const DiscreteObservable<Scalar>& a, const DensityMatrix<Scalar>& rho) {
  return shannon(probabilities(a, rho));
}

/// Coherence (equivalently incompatibility) information
/// I_C(A, rho) = S(sum P_l rho P_l) - S(rho), in nats.
/// Nonnegative; zero exactly when A and rho are compatible; depends on A only
/// through its eigenprojectors, never through the eigenvalue labels.
template <typename Scalar>
Scalar coherence_information(const DiscreteObservable<Scalar>& a,
                             const DensityMatrix<Scalar>& rho) {
  const Scalar ic = von_neumann(luders_state(a, rho)) - von_neumann(rho);
  // Rounding can leave a residue just below zero; report it as exactly zero.
  if (ic < Scalar(0) && ic >= -Scalar(1e-10)) return Scalar(0);
  return ic;
}

/// Terms of the general entropy decomposition
/// S(rho) = S(A,rho) + sum p_l S(P_l rho P_l / p_l) - I_C(A,rho),
/// each computed independently.
template <typename Scalar>
struct CoherenceDecomposition {
  Scalar uncertainty = Scalar(0);
  Scalar conditional_entropy = Scalar(0);
  Scalar coherence_info = Scalar(0);
  Scalar state_entropy = Scalar(0);
  Scalar residual = Scalar(0);
};

template <typename Scalar>
CoherenceDecomposition<Scalar> entropy_decomposition(const DiscreteObservable<Scalar>& a,
                                                     const DensityMatrix<Scalar>& rho,
                                                     Scalar zero_tol = Scalar(defaults::zero_tol)) {
  CoherenceDecomposition<Scalar> out;
  const ProbabilityVector<Scalar> p = probabilities(a, rho);
  out.uncertainty = shannon(p);
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    if (p(l) > zero_tol) {
      out.conditional_entropy += p(l) * von_neumann(conditional_state(a, rho, l, zero_tol));
    }
  }
  out.coherence_info = coherence_information(a, rho);
  out.state_entropy = von_neumann(rho);
  out.residual = std::abs(out.state_entropy -
                          (out.uncertainty + out.conditional_entropy - out.coherence_info));
  return out;
}

template <typename Scalar>
struct ChainEntry {
  Scalar weight = Scalar(0);     // p_m = tr(rho Pbar_m)
  Scalar coherence = Scalar(0);  // I_C of the class-restricted observable; 0 when undetectable
};

/// Report for the coarsening chain identity
/// I_C(A,rho) = I_C(Abar,rho) + sum_m p_m I_C(Pbar_m A, Pbar_m rho Pbar_m / p_m),
/// together with the intermediate form
/// I_C(A,rho) = I_C(Abar,rho) + I_C(A, sum_m Pbar_m rho Pbar_m).
template <typename Scalar>
struct ChainReport {
  Scalar total = Scalar(0);   // I_C(A, rho)
  Scalar coarse = Scalar(0);  // I_C(Abar, rho)
  std::vector<ChainEntry<Scalar>> per_class;
  Scalar residual = Scalar(0);         // |total - coarse - sum p_m I_m|
  Scalar middle_residual = Scalar(0);  // residual of the intermediate form
};

template <typename Scalar>
ChainReport<Scalar> coherence_chain(const DiscreteObservable<Scalar>& a, const Partition& part,
                                    const DensityMatrix<Scalar>& rho,
                                    Scalar zero_tol = Scalar(defaults::zero_tol)) {
  const DiscreteObservable<Scalar> abar = coarsen(a, part);
  ChainReport<Scalar> out;
  out.total = coherence_information(a, rho);
  out.coarse = coherence_information(abar, rho);

  const DensityMatrix<Scalar> pinched = luders_state(abar, rho, zero_tol);
  out.middle_residual =
      std::abs(out.total - (out.coarse + coherence_information(a, pinched)));

  Scalar weighted = Scalar(0);
  for (Eigen::Index m = 0; m < abar.outcomes(); ++m) {
    ChainEntry<Scalar> entry;
    const Matrix<Scalar> block = abar.projector(m) * rho.matrix() * abar.projector(m);
    entry.weight = std::max(Scalar(0), block.real().trace());
    if (entry.weight > zero_tol) {
      const DiscreteObservable<Scalar> restricted = restrict_to(a, abar.projector(m));
      const DensityMatrix<Scalar> cond =
          DensityMatrix<Scalar>::validated(block / Complex<Scalar>(entry.weight), zero_tol);
      entry.coherence = coherence_information(restricted, cond);
      weighted += entry.weight * entry.coherence;
    }
    out.per_class.push_back(entry);
  }
  out.residual = std::abs(out.total - (out.coarse + weighted));
  return out;
}

template <typename Scalar>
struct IncompatibleReduction {
  Scalar weight = Scalar(0);   // total probability carried by the incompatible projectors
  Scalar reduced = Scalar(0);  // I_C of the reduction onto that block
};

/// Splits the outcome indices into at most three classes -- detectable and
/// incompatible, detectable and compatible, undetectable -- and reduces I_C
/// to the incompatible block: weight * reduced equals I_C(A, rho).
template <typename Scalar>
IncompatibleReduction<Scalar> incompatible_reduction(
    const DiscreteObservable<Scalar>& a, const DensityMatrix<Scalar>& rho,
    Scalar detect_tol = Scalar(defaults::zero_tol),
    Scalar compat_tol = Scalar(defaults::compat_tol)) {
  std::vector<int> inc, comp, und;
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    const Scalar pl = (rho.matrix() * a.projector(l)).real().trace();
    if (pl <= detect_tol) {
      und.push_back(static_cast<int>(l));
    } else if (commutator_norm(a.projector(l), rho.matrix()) > compat_tol) {
      inc.push_back(static_cast<int>(l));
    } else {
      comp.push_back(static_cast<int>(l));
    }
  }

  std::vector<std::vector<int>> classes;
  for (auto* cls : {&inc, &comp, &und}) {
    if (!cls->empty()) classes.push_back(*cls);
  }
  const DiscreteObservable<Scalar> abar =
      coarsen(a, Partition(std::move(classes), static_cast<int>(a.outcomes())));
  if (!is_compatible(abar, rho, Scalar(1e-6))) {
    throw ValidationError("incompatible_reduction: ambiguous class structure near tolerance");
  }

  IncompatibleReduction<Scalar> out;
  if (inc.empty()) return out;

  Matrix<Scalar> pbar = Matrix<Scalar>::Zero(a.dim(), a.dim());
  for (int l : inc) pbar += a.projector(l);
  const Matrix<Scalar> block = pbar * rho.matrix() * pbar;
  out.weight = block.real().trace();
  const DiscreteObservable<Scalar> restricted = restrict_to(a, pbar);
  const DensityMatrix<Scalar> cond =
      DensityMatrix<Scalar>::validated(block / Complex<Scalar>(out.weight), detect_tol);
  out.reduced = coherence_information(restricted, cond);
  return out;
}

/// Wigner-Yanase-Dyson skew information
/// I_p(rho, A) = -(1/2) tr([rho^p, A][rho^(1-p), A]), 0 < p < 1.
/// Nonnegative, zero exactly for compatible pairs, and -- unlike the coherence
/// information -- bilinear in the eigenvalue labels of A.
template <typename Scalar>
Scalar skew_information(const DensityMatrix<Scalar>& rho, const DiscreteObservable<Scalar>& a,
                        Scalar p) {
  if (!(p > Scalar(0) && p < Scalar(1))) {
    throw std::domain_error("skew_information: exponent must lie in (0, 1)");
  }
  const Matrix<Scalar> amat = a.matrix();
  const Matrix<Scalar> rho_p = matrix_power(rho.matrix(), p);
  const Matrix<Scalar> rho_q = matrix_power(rho.matrix(), Scalar(1) - p);
  const Matrix<Scalar> product = commutator(rho_p, amat) * commutator(rho_q, amat);
  return -Scalar(0.5) * product.real().trace();
}

template <typename Scalar>
struct InterferenceWitness {
  Matrix<Scalar> observable;  // Hermitian B whose means separate rho from its pinching
  Scalar gap = Scalar(0);     // <B>_rho - <B>_pinched
};

/// Constructive witness B = rho - rho_L: its mean gap equals the squared
/// Frobenius distance between rho and its pinching under A, so the gap is
/// positive exactly for incompatible pairs.
template <typename Scalar>
InterferenceWitness<Scalar> interference_witness(const DiscreteObservable<Scalar>& a,
                                                 const DensityMatrix<Scalar>& rho) {
  const DensityMatrix<Scalar> pinch = luders_state(a, rho);
  InterferenceWitness<Scalar> out;
  out.observable = rho.matrix() - pinch.matrix();
  out.gap = ((rho.matrix() - pinch.matrix()) * out.observable).real().trace();
  return out;
}

/// Rank-one witness: the eigenvector of rho - rho_L with the largest
/// |eigenvalue| as a ray projector, with that |eigenvalue| as the mean gap.
template <typename Scalar>
InterferenceWitness<Scalar> ray_interference_witness(const DiscreteObservable<Scalar>& a,
                                                     const DensityMatrix<Scalar>& rho) {
  const DensityMatrix<Scalar> pinch = luders_state(a, rho);
  const auto es = detail::solve_hermitian(
      static_cast<Matrix<Scalar>>(rho.matrix() - pinch.matrix()));
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(best))) best = i;
  }
  InterferenceWitness<Scalar> out;
  out.observable = es.eigenvectors().col(best) * es.eigenvectors().col(best).adjoint();
  out.gap = std::abs(es.eigenvalues()(best));
  return out;
}

/// Simultaneous conjugation (U A U^dagger, U rho U^dagger); coherence
/// information is invariant under it.
template <typename Scalar>
std::pair<DiscreteObservable<Scalar>, DensityMatrix<Scalar>> conjugate(
    const DiscreteObservable<Scalar>& a, const DensityMatrix<Scalar>& rho,
    const Matrix<Scalar>& u, Scalar unitary_tol = Scalar(defaults::projector_tol)) {
  if (u.rows() != a.dim() || u.cols() != a.dim()) {
    throw ValidationError("conjugate: dimension mismatch");
  }
  if ((u.adjoint() * u - Matrix<Scalar>::Identity(u.rows(), u.cols())).norm() > unitary_tol) {
    throw ValidationError("conjugate: operator is not unitary within tolerance");
  }
  std::vector<std::pair<Scalar, Matrix<Scalar>>> pairs;
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    pairs.emplace_back(a.label(l), u * a.projector(l) * u.adjoint());
  }
  return {make_observable<Scalar>(std::move(pairs)),
          make_density(u * rho.matrix() * u.adjoint())};
}

}  // namespace coherence
