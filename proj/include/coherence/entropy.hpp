#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "coherence/qobj.hpp"

namespace coherence {

/// Entropy result in nats: either a finite real or an explicit infinite
/// marker. Infinity is a legitimate value of relative entropy when the
/// support condition fails, not an error.
template <typename Scalar>
class EntropyValue {
 public:
  static EntropyValue finite(Scalar v) { return EntropyValue(true, v); }
  static EntropyValue infinite() { return EntropyValue(false, Scalar(0)); }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }

  Scalar value() const {
    if (!finite_) throw std::logic_error("EntropyValue: value() called on infinite");
    return v_;
  }
  Scalar value_or_inf() const {
    return finite_ ? v_ : std::numeric_limits<Scalar>::infinity();
  }

  friend EntropyValue operator+(const EntropyValue& a, const EntropyValue& b) {
    return (a.finite_ && b.finite_) ? finite(a.v_ + b.v_) : infinite();
  }
  friend EntropyValue operator-(const EntropyValue& a, Scalar b) {
    return a.finite_ ? finite(a.v_ - b) : infinite();
  }
  friend EntropyValue operator*(Scalar c, const EntropyValue& a) {
    return a.finite_ ? finite(c * a.v_) : infinite();
  }

 private:
  EntropyValue(bool finite, Scalar v) : finite_(finite), v_(v) {}
  bool finite_;
  Scalar v_;
};

using EntropyValued = EntropyValue<double>;

/// Presentation helper: converts nats to bits.
template <typename Scalar>
Scalar nats_to_bits(Scalar nats) {
  return nats / std::log(Scalar(2));
}

/// Shannon entropy H(p) = -sum p log p in nats, with 0 log 0 = 0.
template <typename Scalar>
Scalar shannon(const ProbabilityVector<Scalar>& p) {
  Scalar h = Scalar(0);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > Scalar(0)) h -= p(i) * std::log(p(i));
  }
  return h;
}

/// -sum lambda log lambda over the positive eigenvalues of a psd operator.
/// Accepts subnormalized operators; used for pinched blocks.
template <typename Scalar>
Scalar entropy_of_psd(const Matrix<Scalar>& m, Scalar zero_tol = Scalar(defaults::zero_tol)) {
  const auto es = detail::solve_hermitian(hermitize(m));
  detail::require_psd(es.eigenvalues(), zero_tol, "entropy_of_psd");
  Scalar h = Scalar(0);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Scalar x = es.eigenvalues()(i);
    if (x > Scalar(0)) h -= x * std::log(x);
  }
  return h;
}

/// Von Neumann entropy S(rho) = -tr(rho log rho) in nats. Equals the Shannon
/// entropy of the eigenvalue distribution; zero exactly for pure states.
template <typename Scalar>
Scalar von_neumann(const DensityMatrix<Scalar>& rho) {
  Scalar h = Scalar(0);
  for (Eigen::Index i = 0; i < rho.eigenvalues().size(); ++i) {
    const Scalar x = rho.eigenvalues()(i);
    if (x > Scalar(0)) h -= x * std::log(x);
  }
  return h;
}

/// Classical relative entropy sum p_k (log p_k - log w_k); infinite unless
/// every detectable p_k has w_k > 0.
template <typename Scalar>
EntropyValue<Scalar> classical_rel_entropy(const ProbabilityVector<Scalar>& p,
                                           const ProbabilityVector<Scalar>& w,
                                           Scalar zero_tol = Scalar(1e-12)) {
  if (p.size() != w.size()) throw ValidationError("classical_rel_entropy: length mismatch");
  Scalar acc = Scalar(0);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p(k) > zero_tol) {
      if (w(k) <= zero_tol) return EntropyValue<Scalar>::infinite();
      acc += p(k) * (std::log(p(k)) - std::log(w(k)));
    }
  }
  return EntropyValue<Scalar>::finite(acc);
}

namespace detail {

/// Diagonal overlaps <v_j| rho |v_j> against sigma's eigenbasis.
template <typename Scalar>
RealVector<Scalar> overlaps(const DensityMatrix<Scalar>& rho, const DensityMatrix<Scalar>& sigma) {
  return (sigma.eigenvectors().adjoint() * rho.matrix() * sigma.eigenvectors())
      .diagonal()
      .real()
      .cwiseMax(Scalar(0));
}

}  // namespace detail

/// Quantum relative entropy S(rho || sigma) = tr(rho log rho) - tr(rho log sigma)
/// when supp(rho) lies inside supp(sigma), else infinite. The support test is
/// tr((I - Q_sigma) rho) <= support_tol; the extended logarithm makes the zero
/// convention automatic on sigma's null space.
template <typename Scalar>
EntropyValue<Scalar> quantum_rel_entropy(const DensityMatrix<Scalar>& rho,
                                         const DensityMatrix<Scalar>& sigma,
                                         Scalar support_tol = Scalar(defaults::support_tol),
                                         Scalar zero_tol = Scalar(defaults::zero_tol)) {
  if (rho.dim() != sigma.dim()) throw ValidationError("quantum_rel_entropy: dimension mismatch");
  const RealVector<Scalar> ov = detail::overlaps(rho, sigma);
  Scalar inside = Scalar(0);
  Scalar cross = Scalar(0);
  for (Eigen::Index j = 0; j < ov.size(); ++j) {
    const Scalar lam = sigma.eigenvalues()(j);
    if (lam > zero_tol) {
      inside += ov(j);
      cross += ov(j) * std::log(lam);
    }
  }
  if (Scalar(1) - inside > support_tol) return EntropyValue<Scalar>::infinite();
  return EntropyValue<Scalar>::finite(-von_neumann(rho) - cross);
}

namespace detail {

template <typename Scalar>
void require_orthogonal_parts(const std::vector<DensityMatrix<Scalar>>& parts, Scalar tol,
                              const char* who) {
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t j = i + 1; j < parts.size(); ++j) {
      if ((parts[i].matrix() * parts[j].matrix()).norm() > tol) {
        throw ValidationError(std::string(who) + ": parts do not have orthogonal supports");
      }
    }
  }
}

template <typename Scalar>
bool parts_orthogonal(const std::vector<DensityMatrix<Scalar>>& parts, Scalar tol) {
  for (size_t i = 0; i < parts.size(); ++i) {
    for (size_t j = i + 1; j < parts.size(); ++j) {
      if ((parts[i].matrix() * parts[j].matrix()).norm() > tol) return false;
    }
  }
  return true;
}

template <typename Scalar>
DensityMatrix<Scalar> mix(const ProbabilityVector<Scalar>& w,
                          const std::vector<DensityMatrix<Scalar>>& parts) {
  if (parts.empty() || static_cast<size_t>(w.size()) != parts.size()) {
    throw ValidationError("state decomposition: weight/part count mismatch");
  }
  Matrix<Scalar> acc = Matrix<Scalar>::Zero(parts.front().dim(), parts.front().dim());
  for (size_t k = 0; k < parts.size(); ++k) {
    acc += Complex<Scalar>(w(static_cast<Eigen::Index>(k))) * parts[k].matrix();
  }
  return make_density(acc);
}

}  // namespace detail

/// Residual of the mixing property of entropy for an orthogonal state
/// decomposition sigma = sum w_k sigma_k:
/// |S(sigma) - H(w) - sum w_k S(sigma_k)|.
template <typename Scalar>
Scalar mixing_identity_gap(const ProbabilityVector<Scalar>& w,
                           const std::vector<DensityMatrix<Scalar>>& parts,
                           Scalar orth_tol = Scalar(defaults::projector_tol)) {
  detail::require_orthogonal_parts(parts, orth_tol, "mixing_identity_gap");
  const DensityMatrix<Scalar> sigma = detail::mix(w, parts);
  Scalar rhs = shannon(w);
  for (size_t k = 0; k < parts.size(); ++k) {
    const Scalar wk = w(static_cast<Eigen::Index>(k));
    if (wk > Scalar(0)) rhs += wk * von_neumann(parts[k]);
  }
  return std::abs(von_neumann(sigma) - rhs);
}

/// The three right-hand terms of the mixing property of relative entropy,
/// next to the independently computed total S(rho || sigma).
template <typename Scalar>
struct RelEntropyBreakdown {
  Scalar luders_gap = Scalar(0);        // S(sum Q_k rho Q_k) - S(rho)
  Scalar classical_term = Scalar(0);    // H(p_k || w_k)
  Scalar conditional_term = Scalar(0);  // sum p_k S(Q_k rho Q_k / p_k || sigma_k)
  EntropyValue<Scalar> total = EntropyValue<Scalar>::finite(Scalar(0));
  Scalar residual = Scalar(0);          // |total - sum of the three parts| when finite
};

/// Decomposes S(rho || sigma) over an orthogonal decomposition
/// sigma = sum w_k sigma_k, with Q_k the support of sigma_k for w_k > 0 and
/// Q_k = 0 otherwise, p_k = tr(rho Q_k). When the support condition fails the
/// total is infinite and the parts are reported as computed.
template <typename Scalar>
RelEntropyBreakdown<Scalar> rel_entropy_mixing_decomposition(
    const DensityMatrix<Scalar>& rho, const ProbabilityVector<Scalar>& w,
    const std::vector<DensityMatrix<Scalar>>& parts,
    Scalar zero_tol = Scalar(defaults::zero_tol)) {
  detail::require_orthogonal_parts(parts, Scalar(defaults::projector_tol),
                                   "rel_entropy_mixing_decomposition");
  const Eigen::Index dim = rho.dim();
  const size_t n = parts.size();

  RelEntropyBreakdown<Scalar> out;
  Matrix<Scalar> pinched = Matrix<Scalar>::Zero(dim, dim);
  std::vector<Scalar> pk(n, Scalar(0));
  std::vector<Matrix<Scalar>> qk(n);
  for (size_t k = 0; k < n; ++k) {
    const Scalar wk = w(static_cast<Eigen::Index>(k));
    qk[k] = wk > Scalar(0) ? parts[k].support(zero_tol) : Matrix<Scalar>::Zero(dim, dim);
    const Matrix<Scalar> block = qk[k] * rho.matrix() * qk[k];
    pk[k] = std::max(Scalar(0), block.real().trace());
    pinched += block;
  }

  out.luders_gap = entropy_of_psd(pinched) - von_neumann(rho);
  for (size_t k = 0; k < n; ++k) {
    if (pk[k] > zero_tol) {
      // Q_k nonzero implies w_k > 0, so the classical support condition holds.
      out.classical_term += pk[k] * (std::log(pk[k]) - std::log(w(static_cast<Eigen::Index>(k))));
      const DensityMatrix<Scalar> rho_k =
          DensityMatrix<Scalar>::validated(qk[k] * rho.matrix() * qk[k] / Complex<Scalar>(pk[k]),
                                           zero_tol);
      out.conditional_term += pk[k] * quantum_rel_entropy(rho_k, parts[k]).value_or_inf();
    }
  }

  const DensityMatrix<Scalar> sigma = detail::mix(w, parts);
  out.total = quantum_rel_entropy(rho, sigma);
  out.residual = out.total.is_finite()
                     ? std::abs(out.total.value() -
                                (out.luders_gap + out.classical_term + out.conditional_term))
                     : std::numeric_limits<Scalar>::quiet_NaN();
  return out;
}

/// Residual of Donald-style decompositions of S(rho || sigma) over a
/// decomposition rho = sum p_k rho_k of the first argument:
///   general form   S(rho||sigma) = sum p_k S(rho_k||sigma) - sum p_k S(rho_k||rho),
///   mixing form    S(rho) = sum p_k S(rho_k||rho) + sum p_k S(rho_k),
/// and, when the parts have orthogonal supports, the special form
///   S(rho||sigma) = sum p_k S(rho_k||sigma) - H(p).
/// Returns the largest residual among the applicable identities, or infinity
/// when a term diverges.
template <typename Scalar>
Scalar donald_gap(const ProbabilityVector<Scalar>& p,
                  const std::vector<DensityMatrix<Scalar>>& parts,
                  const DensityMatrix<Scalar>& sigma,
                  Scalar zero_tol = Scalar(defaults::zero_tol)) {
  const DensityMatrix<Scalar> rho = detail::mix(p, parts);
  const EntropyValue<Scalar> lhs = quantum_rel_entropy(rho, sigma);

  Scalar vs_sigma = Scalar(0);
  Scalar vs_rho = Scalar(0);
  Scalar part_entropy = Scalar(0);
  for (size_t k = 0; k < parts.size(); ++k) {
    const Scalar pk = p(static_cast<Eigen::Index>(k));
    if (pk <= zero_tol) continue;
    const EntropyValue<Scalar> dks = quantum_rel_entropy(parts[k], sigma);
    const EntropyValue<Scalar> dkr = quantum_rel_entropy(parts[k], rho);
    if (dks.is_infinite() || dkr.is_infinite() || lhs.is_infinite()) {
      return std::numeric_limits<Scalar>::infinity();
    }
    vs_sigma += pk * dks.value();
    vs_rho += pk * dkr.value();
    part_entropy += pk * von_neumann(parts[k]);
  }

  Scalar residual = std::abs(lhs.value() - (vs_sigma - vs_rho));
  residual = std::max(residual, std::abs(von_neumann(rho) - (vs_rho + part_entropy)));
  if (detail::parts_orthogonal(parts, Scalar(defaults::projector_tol))) {
    residual = std::max(residual, std::abs(lhs.value() - (vs_sigma - shannon(p))));
  }
  return residual;
}

/// Relative-entropic distance from rho to its pinching under A, evaluated on
/// the relative-entropy route. The entropy-difference route
/// S(pinched) - S(rho) is kept independent so the two can be cross-checked.
template <typename Scalar>
Scalar luders_distance(const DensityMatrix<Scalar>& rho, const DiscreteObservable<Scalar>& a) {
  return quantum_rel_entropy(rho, luders_state(a, rho)).value_or_inf();
}

/// Residual of the collinearity identity for a refinement pair: with B finer
/// than A, S(rho||rho_L(B)) = S(rho||rho_L(A)) + S(rho_L(A)||rho_L(B)).
/// All three relative entropies are evaluated independently.
template <typename Scalar>
Scalar luders_chain_gap(const DensityMatrix<Scalar>& rho, const DiscreteObservable<Scalar>& a,
                        const DiscreteObservable<Scalar>& b_refinement) {
  if (!is_coarsening(a, b_refinement)) {
    throw ValidationError("luders_chain_gap: second observable does not refine the first");
  }
  const DensityMatrix<Scalar> la = luders_state(a, rho);
  const DensityMatrix<Scalar> lb = luders_state(b_refinement, rho);
  const Scalar whole = quantum_rel_entropy(rho, lb).value_or_inf();
  const Scalar first = quantum_rel_entropy(rho, la).value_or_inf();
  const Scalar second = quantum_rel_entropy(la, lb).value_or_inf();
  return std::abs(whole - (first + second));
}

}  // namespace coherence
