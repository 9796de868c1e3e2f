#pragma once

#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coherence/coherence.hpp"
#include "coherence/random.hpp"

namespace coherence {

struct SuiteFailure {
  std::uint64_t seed = 0;
  double residual = 0.0;
};

/// Outcome of one randomized property suite; replayable from (suite, trials,
/// dims, seed, tolerance) alone.
struct VerificationReport {
  std::string suite;
  int trials = 0;
  int dim_lo = 2;
  int dim_hi = 8;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  int redraws = 0;
  std::vector<SuiteFailure> failures;
  bool passed = false;

  std::string to_text() const {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "suite=%-14s trials=%-5d dims=%d..%d seed=%llu tol=%.1e "
                  "max_residual=%.3e redraws=%d failures=%zu passed=%s",
                  suite.c_str(), trials, dim_lo, dim_hi,
                  static_cast<unsigned long long>(seed), tolerance, max_residual, redraws,
                  failures.size(), passed ? "yes" : "no");
    return buf;
  }

  nlohmann::json to_json() const {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : failures) {
      fails.push_back({{"seed", f.seed}, {"residual", f.residual}});
    }
    return nlohmann::json{{"suite", suite},
                          {"trials", trials},
                          {"dims", {dim_lo, dim_hi}},
                          {"seed", seed},
                          {"tolerance", tolerance},
                          {"max_residual", max_residual},
                          {"redraws", redraws},
                          {"failures", fails},
                          {"passed", passed}};
  }
};

namespace suites {

/// Orthogonal state decomposition sigma = sum w_k sigma_k with the sigma_k
/// supported on orthogonal blocks of a random unitary frame.
struct OrthDecomposition {
  ProbabilityVectord w;
  std::vector<DensityMatrixd> parts;
};

/// Draws that would put an eigenvalue or weight inside the numerical dead band
/// around zero are rejected: the zero convention makes such terms vacuous, so
/// they carry no information about the identities under test.
inline constexpr double eval_floor = 1e-4;

inline bool clean_spectrum(const DensityMatrixd& rho) {
  for (Eigen::Index i = 0; i < rho.eigenvalues().size(); ++i) {
    const double x = rho.eigenvalues()(i);
    if (x > defaults::zero_tol && x < eval_floor) return false;
  }
  return true;
}

inline std::optional<OrthDecomposition> gen_orth_decomposition(std::uint64_t seed, int dim,
                                                               bool allow_zero_weight) {
  Prng rng(derive_seed(seed, 11));
  const int n_blocks = rng.uniform_int(2, std::min(dim, 4));
  const std::vector<int> sizes = detail::gen_block_sizes(dim, n_blocks, rng);
  const Matrixd u = gen_unitary(dim, derive_seed(seed, 12));

  std::vector<DensityMatrixd> parts;
  int offset = 0;
  for (int k = 0; k < n_blocks; ++k) {
    const int size = sizes[static_cast<size_t>(k)];
    const int rank = rng.uniform_int(1, size);
    const DensityMatrixd local = gen_state(size, rank, derive_seed(seed, 100 + k));
    if (!clean_spectrum(local)) return std::nullopt;
    const auto cols = u.middleCols(offset, size);
    parts.push_back(make_density(cols * local.matrix() * cols.adjoint()));
    offset += size;
  }

  RealVectord w = gen_prob_vector(n_blocks, derive_seed(seed, 13)).weights();
  if (allow_zero_weight && n_blocks >= 3 && rng.uniform() < 0.3) {
    w(rng.uniform_int(0, n_blocks - 1)) = 0.0;
    w /= w.sum();
  }
  for (int k = 0; k < n_blocks; ++k) {
    if (w(k) > 0.0 && w(k) < eval_floor) return std::nullopt;
  }
  return OrthDecomposition{ProbabilityVectord(std::move(w)), std::move(parts)};
}

inline DensityMatrixd gen_state_any_rank(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 21));
  return gen_state(dim, rng.uniform_int(1, dim), derive_seed(seed, 22));
}

inline DiscreteObservabled gen_observable_any(std::uint64_t seed, int dim, int min_blocks = 2) {
  Prng rng(derive_seed(seed, 31));
  return gen_observable(dim, rng.uniform_int(min_blocks, dim), derive_seed(seed, 32));
}

/// Four-way equivalence between definite-value decomposability, commutation,
/// invariance under pinching, and the existence of an interference witness;
/// also pins the witness gap to the squared Frobenius distance.
inline std::optional<double> lemma1(std::uint64_t seed, int dim) {
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const bool make_compatible = (splitmix64(seed ^ 0xC0FFEEull) & 1ull) != 0;

  std::optional<DensityMatrixd> rho;
  if (make_compatible) {
    rho = luders_state(a, gen_state_any_rank(derive_seed(seed, 41), dim));
  } else {
    rho = gen_state_any_rank(derive_seed(seed, 42), dim);
    const DensityMatrixd pinched = luders_state(a, *rho);
    if ((rho->matrix() - pinched.matrix()).squaredNorm() < 1e-6) return std::nullopt;
  }

  const DensityMatrixd pinched = luders_state(a, *rho);
  const double dist = (rho->matrix() - pinched.matrix()).norm();

  const bool incompatible = !is_compatible(a, *rho, 1e-8);
  const bool pinch_moved = dist > 1e-8;
  const auto witness = interference_witness(a, *rho);
  const bool witnessed = witness.gap > 1e-9;

  // Constructive definite-value decomposition: sum of p_l times the
  // conditional states, skipping undetectable outcomes.
  const ProbabilityVectord p = probabilities(a, *rho);
  Matrixd rebuilt = Matrixd::Zero(dim, dim);
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    if (p(l) > defaults::zero_tol) {
      rebuilt += p(l) * conditional_state(a, *rho, l).matrix();
    }
  }
  const bool not_decomposable = (rho->matrix() - rebuilt).norm() > 1e-8;

  const bool agree = (incompatible == pinch_moved) && (incompatible == witnessed) &&
                     (incompatible == not_decomposable) && (incompatible == !make_compatible);
  if (!agree) return 1.0;
  return std::abs(witness.gap - dist * dist);
}

/// The pinching is the closest block-diagonal state in Frobenius distance.
inline std::optional<double> luders_min(std::uint64_t seed, int dim) {
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 43), dim);
  const DensityMatrixd pinched = luders_state(a, rho);
  const DensityMatrixd other = luders_state(a, gen_state_any_rank(derive_seed(seed, 44), dim));
  const double to_pinched = (rho.matrix() - pinched.matrix()).norm();
  const double to_other = (rho.matrix() - other.matrix()).norm();
  return std::max(0.0, to_pinched - to_other);
}

/// Mixing property of entropy over an orthogonal state decomposition.
inline std::optional<double> eq13(std::uint64_t seed, int dim) {
  const auto dec = gen_orth_decomposition(seed, dim, /*allow_zero_weight=*/true);
  if (!dec) return std::nullopt;
  return mixing_identity_gap(dec->w, dec->parts);
}

/// Extended-logarithm identity for an orthogonal state decomposition:
/// log_e(sigma) = sum' log(w_k) Q_k + sum' log_e(sigma_k).
inline std::optional<double> eq14(std::uint64_t seed, int dim) {
  const auto dec = gen_orth_decomposition(seed, dim, /*allow_zero_weight=*/true);
  if (!dec) return std::nullopt;
  const DensityMatrixd sigma = detail::mix(dec->w, dec->parts);
  Matrixd rhs = Matrixd::Zero(dim, dim);
  for (size_t k = 0; k < dec->parts.size(); ++k) {
    const double wk = dec->w(static_cast<Eigen::Index>(k));
    if (wk > 0.0) {
      rhs += std::log(wk) * dec->parts[k].support();
      rhs += extended_log(dec->parts[k].matrix());
    }
  }
  return (extended_log(sigma.matrix()) - rhs).norm();
}

/// Mixing property of relative entropy: both sides evaluated independently,
/// on full-rank and on compressed-support instances; conditional terms must
/// stay nonnegative.
inline std::optional<double> eq15(std::uint64_t seed, int dim) {
  const auto dec = gen_orth_decomposition(seed, dim, /*allow_zero_weight=*/true);
  if (!dec) return std::nullopt;

  DensityMatrixd rho = gen_state(dim, dim, derive_seed(seed, 51));
  if (!clean_spectrum(rho)) return std::nullopt;
  // The identity presumes supp(rho) inside supp(sigma): compress rho whenever
  // sigma is singular (zero weights or rank-deficient parts).
  const DensityMatrixd sigma = detail::mix(dec->w, dec->parts);
  const Matrixd q = sigma.support();
  if ((q - Matrixd::Identity(dim, dim)).norm() > 1e-8) {
    const Matrixd block = q * rho.matrix() * q;
    const double mass = block.real().trace();
    if (mass < 0.1) return std::nullopt;
    rho = make_density(block / Complexd(mass));
  }

  const auto breakdown = rel_entropy_mixing_decomposition(rho, dec->w, dec->parts);
  if (breakdown.total.is_infinite()) return 1.0;  // support condition must hold here
  double residual = breakdown.residual;
  residual = std::max(residual, std::max(0.0, -breakdown.conditional_term));

  // Individual conditional terms stay nonnegative.
  for (size_t k = 0; k < dec->parts.size(); ++k) {
    const double wk = dec->w(static_cast<Eigen::Index>(k));
    if (wk <= 0.0) continue;
    const Matrixd qk = dec->parts[k].support();
    const Matrixd block = qk * rho.matrix() * qk;
    const double pk = block.real().trace();
    if (pk > defaults::zero_tol) {
      const auto term =
          quantum_rel_entropy(make_density(block / Complexd(pk)), dec->parts[k]);
      residual = std::max(residual, std::max(0.0, -term.value_or_inf()));
    }
  }
  return residual;
}

/// Donald-style decompositions of the first argument of relative entropy,
/// on generic and on orthogonal (eigenbasis-split) decompositions.
inline std::optional<double> donald(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 61));
  const bool orthogonal = rng.uniform() < 0.5;

  DensityMatrixd sigma = gen_state(dim, dim, derive_seed(seed, 62));
  if (!clean_spectrum(sigma)) return std::nullopt;

  if (!orthogonal) {
    const int n = rng.uniform_int(2, 4);
    std::vector<DensityMatrixd> parts;
    for (int k = 0; k < n; ++k) {
      const DensityMatrixd part = gen_state(dim, dim, derive_seed(seed, 70 + k));
      if (!clean_spectrum(part)) return std::nullopt;
      parts.push_back(part);
    }
    const ProbabilityVectord p = gen_prob_vector(n, derive_seed(seed, 63));
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (p(k) < 0.01) return std::nullopt;
    }
    return donald_gap(p, parts, sigma);
  }

  // Orthogonal decomposition: split a full-rank state along its eigenbasis.
  const DensityMatrixd rho = gen_state(dim, dim, derive_seed(seed, 64));
  if (!clean_spectrum(rho)) return std::nullopt;
  const int n = rng.uniform_int(2, std::min(dim, 3));
  const std::vector<int> sizes = detail::gen_block_sizes(dim, n, rng);
  std::vector<DensityMatrixd> parts;
  RealVectord p(n);
  int offset = 0;
  for (int k = 0; k < n; ++k) {
    const auto cols = rho.eigenvectors().middleCols(offset, sizes[static_cast<size_t>(k)]);
    const auto vals = rho.eigenvalues().segment(offset, sizes[static_cast<size_t>(k)]);
    p(k) = vals.sum();
    if (p(k) < 1e-3) return std::nullopt;
    parts.push_back(make_density(cols * (vals / p(k)).asDiagonal() * cols.adjoint()));
    offset += sizes[static_cast<size_t>(k)];
  }
  if (rng.uniform() < 0.5) sigma = rho;  // exercise the sigma = rho special case
  return donald_gap(ProbabilityVectord(std::move(p)), parts, sigma);
}

/// Relative-entropic distance to the pinching equals the entropy difference.
inline std::optional<double> cor1(std::uint64_t seed, int dim) {
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 81), dim);
  const DensityMatrixd pinched = luders_state(a, rho);
  return std::abs(luders_distance(rho, a) - (von_neumann(pinched) - von_neumann(rho)));
}

/// Collinearity of rho, its coarse pinching, and its fine pinching.
inline std::optional<double> cor2(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 91));
  const DiscreteObservabled b = gen_observable_any(seed, dim);
  const int m = rng.uniform_int(1, static_cast<int>(b.outcomes()));
  const Partition part =
      gen_partition(static_cast<int>(b.outcomes()), m, derive_seed(seed, 92));
  const DiscreteObservabled a = coarsen(b, part);
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 93), dim);
  return luders_chain_gap(rho, a, b);
}

/// General entropy decomposition, plus its two limiting cases: a complete
/// observable leaves no conditional entropy, a compatible one no coherence.
inline std::optional<double> eq11(std::uint64_t seed, int dim) {
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 101), dim);
  double residual = entropy_decomposition(a, rho).residual;

  const DiscreteObservabled complete = gen_observable(dim, dim, derive_seed(seed, 102));
  residual = std::max(residual, entropy_decomposition(complete, rho).conditional_entropy);

  const DiscreteObservabled a2 = gen_observable_any(derive_seed(seed, 103), dim);
  const DensityMatrixd compatible =
      luders_state(a2, gen_state_any_rank(derive_seed(seed, 104), dim));
  residual = std::max(residual, entropy_decomposition(a2, compatible).coherence_info);
  return residual;
}

/// Coarsening chain identity, its intermediate pinched form, per-class
/// nonnegativity, and coarsening monotonicity.
inline std::optional<double> thm28(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 111));
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const int m = rng.uniform_int(1, static_cast<int>(a.outcomes()));
  const Partition part =
      gen_partition(static_cast<int>(a.outcomes()), m, derive_seed(seed, 112));
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 113), dim);

  const auto report = coherence_chain(a, part, rho);
  for (const auto& entry : report.per_class) {
    if (entry.weight < 1e-6) return std::nullopt;  // vacuous term; redraw
  }
  double residual = std::max(report.residual, report.middle_residual);
  residual = std::max(residual, std::max(0.0, report.coarse - report.total));
  for (const auto& entry : report.per_class) {
    residual = std::max(residual, std::max(0.0, -entry.coherence));
  }
  return residual;
}

/// When the coarsening is compatible with the state the chain collapses to a
/// pure average of class terms.
inline std::optional<double> prop2(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 121));
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const int m = rng.uniform_int(1, static_cast<int>(a.outcomes()));
  const Partition part =
      gen_partition(static_cast<int>(a.outcomes()), m, derive_seed(seed, 122));
  const DiscreteObservabled abar = coarsen(a, part);
  const DensityMatrixd rho =
      luders_state(abar, gen_state_any_rank(derive_seed(seed, 123), dim));

  const auto report = coherence_chain(a, part, rho);
  for (const auto& entry : report.per_class) {
    if (entry.weight < 1e-6) return std::nullopt;
  }
  double weighted = 0.0;
  for (const auto& entry : report.per_class) weighted += entry.weight * entry.coherence;
  double residual = std::max(report.residual, report.middle_residual);
  residual = std::max(residual, report.coarse);  // compatible coarsening carries no coherence
  residual = std::max(residual, std::abs(report.total - weighted));
  return residual;
}

/// Three-class reduction: detectable-incompatible, detectable-compatible and
/// undetectable outcomes, with the weighted reduced coherence reproducing
/// the full value. All three classes are populated by construction.
inline std::optional<double> prop3(std::uint64_t seed, int dim) {
  if (dim < 4) return std::nullopt;
  Prng rng(derive_seed(seed, 131));
  const int inc_d = rng.uniform_int(2, dim - 2);
  const int comp_d = rng.uniform_int(1, dim - inc_d - 1);
  const int und_d = dim - inc_d - comp_d;

  const Matrixd u = gen_unitary(dim, derive_seed(seed, 132));

  // Sub-block structure per class.
  const int k_inc = rng.uniform_int(2, inc_d);
  const int k_comp = rng.uniform_int(1, comp_d);
  const int k_und = rng.uniform_int(1, und_d);
  std::vector<int> sizes = detail::gen_block_sizes(inc_d, k_inc, rng);
  {
    const auto comp_sizes = detail::gen_block_sizes(comp_d, k_comp, rng);
    sizes.insert(sizes.end(), comp_sizes.begin(), comp_sizes.end());
    const auto und_sizes = detail::gen_block_sizes(und_d, k_und, rng);
    sizes.insert(sizes.end(), und_sizes.begin(), und_sizes.end());
  }
  std::vector<std::pair<double, Matrixd>> pairs;
  int offset = 0;
  for (size_t i = 0; i < sizes.size(); ++i) {
    const auto cols = u.middleCols(offset, sizes[i]);
    pairs.emplace_back(static_cast<double>(i), cols * cols.adjoint());
    offset += sizes[i];
  }
  const DiscreteObservabled a = make_observable<double>(std::move(pairs));

  // State: coherent across the incompatible sub-blocks, pinched on the
  // compatible ones, zero on the undetectable ones.
  const DensityMatrixd inc_local = gen_state(inc_d, inc_d, derive_seed(seed, 133));
  int check_off = 0;
  for (int i = 0; i < k_inc; ++i) {
    Matrixd p = Matrixd::Zero(inc_d, inc_d);
    p.block(check_off, check_off, sizes[static_cast<size_t>(i)], sizes[static_cast<size_t>(i)]) =
        Matrixd::Identity(sizes[static_cast<size_t>(i)], sizes[static_cast<size_t>(i)]);
    if (commutator_norm(p, inc_local.matrix()) < 1e-4) return std::nullopt;
    check_off += sizes[static_cast<size_t>(i)];
  }

  Matrixd comp_local = gen_state(comp_d, comp_d, derive_seed(seed, 134)).matrix();
  {
    Matrixd pinched = Matrixd::Zero(comp_d, comp_d);
    int off = 0;
    for (int i = 0; i < k_comp; ++i) {
      const int s = sizes[static_cast<size_t>(k_inc + i)];
      pinched.block(off, off, s, s) = comp_local.block(off, off, s, s);
      off += s;
    }
    comp_local = pinched;
  }

  const RealVectord w2 = gen_prob_vector(2, derive_seed(seed, 135)).weights();
  if (w2.minCoeff() < 0.05) return std::nullopt;
  Matrixd local = Matrixd::Zero(dim, dim);
  local.block(0, 0, inc_d, inc_d) = w2(0) * inc_local.matrix();
  local.block(inc_d, inc_d, comp_d, comp_d) = w2(1) * comp_local;
  const DensityMatrixd rho = make_density(u * local * u.adjoint());

  const auto red = incompatible_reduction(a, rho);
  double residual = std::abs(red.weight - w2(0));
  residual = std::max(residual,
                      std::abs(red.weight * red.reduced - coherence_information(a, rho)));
  return residual;
}

/// Coherence information is invariant under simultaneous conjugation.
inline std::optional<double> prop4(std::uint64_t seed, int dim) {
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 141), dim);
  const Matrixd u = gen_unitary(dim, derive_seed(seed, 142));
  const auto [a2, rho2] = conjugate(a, rho, u);
  return std::abs(coherence_information(a, rho) - coherence_information(a2, rho2));
}

/// Coherence information is convex in the state.
inline std::optional<double> prop5(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 151));
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const DensityMatrixd rho1 = gen_state_any_rank(derive_seed(seed, 152), dim);
  const DensityMatrixd rho2 = gen_state_any_rank(derive_seed(seed, 153), dim);
  const double lam = rng.uniform(0.05, 0.95);
  const DensityMatrixd mixed =
      make_density(lam * rho1.matrix() + (1.0 - lam) * rho2.matrix());
  const double lhs = coherence_information(a, mixed);
  const double rhs = lam * coherence_information(a, rho1) +
                     (1.0 - lam) * coherence_information(a, rho2);
  return std::max(0.0, lhs - rhs);
}

/// Skew information scales quadratically with the eigenvalue labels while the
/// coherence information stays bit-identical under any relabeling.
inline std::optional<double> skew_contrast(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 161));
  const DiscreteObservabled a = gen_observable_any(seed, dim);
  const DensityMatrixd rho = gen_state_any_rank(derive_seed(seed, 162), dim);
  const double p = rng.uniform(0.1, 0.9);
  const double c = rng.uniform(0.5, 3.0);

  std::vector<std::pair<double, Matrixd>> scaled;
  std::vector<std::pair<double, Matrixd>> relabeled;
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    scaled.emplace_back(c * (a.label(l) + 1.0), a.projector(l));
    relabeled.emplace_back(rng.uniform(0.0, 0.5) + static_cast<double>(l), a.projector(l));
  }
  std::vector<std::pair<double, Matrixd>> base;
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    base.emplace_back(a.label(l) + 1.0, a.projector(l));
  }
  const DiscreteObservabled a_base = make_observable<double>(std::move(base));
  const DiscreteObservabled a_scaled = make_observable<double>(std::move(scaled));
  const DiscreteObservabled a_relabeled = make_observable<double>(std::move(relabeled));

  double residual = std::abs(skew_information(rho, a_scaled, p) -
                             c * c * skew_information(rho, a_base, p));
  const double ic = coherence_information(a_base, rho);
  if (coherence_information(a_relabeled, rho) != ic ||
      coherence_information(a_scaled, rho) != ic) {
    residual = std::max(residual, 1.0);
  }
  return residual;
}

/// Support-projector absorption: Q rho Q = rho, and any projector fixing rho
/// fixes its support projector.
inline std::optional<double> appendix2(std::uint64_t seed, int dim) {
  Prng rng(derive_seed(seed, 171));
  const int rank = rng.uniform_int(1, dim);
  const DensityMatrixd rho = gen_state(dim, rank, derive_seed(seed, 172));
  const Matrixd q = support_projector(rho.matrix());

  double residual = (q * rho.matrix() - rho.matrix()).norm();
  residual = std::max(residual, (q * rho.matrix() * q - rho.matrix()).norm());

  // Enlarge the support by unused eigendirections; E rho = rho must give EQ = Q.
  Matrixd e = q;
  for (Eigen::Index i = 0; i < dim - rank; ++i) {
    if (rng.uniform() < 0.5) {
      e += rho.eigenvectors().col(i) * rho.eigenvectors().col(i).adjoint();
    }
  }
  residual = std::max(residual, (e * rho.matrix() - rho.matrix()).norm());
  residual = std::max(residual, (e * q - q).norm());
  return residual;
}

}  // namespace suites

namespace detail {

struct SuiteSpec {
  const char* name;
  int min_dim;
  double default_tol;
  std::optional<double> (*fn)(std::uint64_t, int);
};

inline const std::vector<SuiteSpec>& suite_registry() {
  static const std::vector<SuiteSpec> registry = {
      {"lemma1", 2, 1e-8, &suites::lemma1},
      {"luders-min", 2, 1e-8, &suites::luders_min},
      {"eq13", 2, 1e-8, &suites::eq13},
      {"eq14", 2, 1e-8, &suites::eq14},
      {"eq15", 2, 1e-8, &suites::eq15},
      {"donald", 2, 1e-8, &suites::donald},
      {"cor1", 2, 1e-8, &suites::cor1},
      {"cor2", 2, 1e-8, &suites::cor2},
      {"eq11", 2, 1e-8, &suites::eq11},
      {"thm28", 2, 1e-8, &suites::thm28},
      {"prop2", 2, 1e-8, &suites::prop2},
      {"prop3", 4, 1e-8, &suites::prop3},
      {"prop4", 2, 1e-9, &suites::prop4},
      {"prop5", 2, 1e-9, &suites::prop5},
      {"skew-contrast", 2, 1e-9, &suites::skew_contrast},
      {"appendix2", 2, 1e-8, &suites::appendix2},
  };
  return registry;
}

}  // namespace detail

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : detail::suite_registry()) names.emplace_back(s.name);
  return names;
}

/// Runs one named suite over random instances with per-trial seeds derived
/// deterministically from the master seed. A nonpositive tolerance selects
/// the suite default. Degenerate draws are redrawn and counted.
inline VerificationReport run_suite(const std::string& name, int trials, int dim_lo, int dim_hi,
                                    std::uint64_t seed, double tolerance = 0.0) {
  const detail::SuiteSpec* spec = nullptr;
  for (const auto& s : detail::suite_registry()) {
    if (name == s.name) spec = &s;
  }
  if (spec == nullptr) {
    std::string names;
    for (const auto& s : detail::suite_registry()) {
      names += names.empty() ? s.name : std::string(" ") + s.name;
    }
    throw std::invalid_argument("unknown suite '" + name + "'; valid names: " + names);
  }
  if (trials < 1) throw std::invalid_argument("run_suite: trials >= 1 required");
  if (dim_lo < 2 || dim_hi < dim_lo) {
    throw std::invalid_argument("run_suite: need 2 <= dim_lo <= dim_hi");
  }

  VerificationReport report;
  report.suite = name;
  report.trials = trials;
  report.dim_lo = std::max(dim_lo, spec->min_dim);
  report.dim_hi = std::max(dim_hi, report.dim_lo);
  report.seed = seed;
  report.tolerance = tolerance > 0.0 ? tolerance : spec->default_tol;

  constexpr int max_attempts = 64;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(t));
    double residual = std::numeric_limits<double>::infinity();
    std::uint64_t used_seed = base;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      const std::uint64_t s = derive_seed(base, 7000 + static_cast<std::uint64_t>(attempt));
      const int span = report.dim_hi - report.dim_lo + 1;
      const int dim = report.dim_lo +
                      static_cast<int>(splitmix64(s ^ 0xD1Dull) % static_cast<std::uint64_t>(span));
      if (const auto r = spec->fn(s, dim)) {
        residual = *r;
        used_seed = s;
        break;
      }
      ++report.redraws;
    }
    report.max_residual = std::max(report.max_residual, residual);
    if (!(residual <= report.tolerance)) {
      report.failures.push_back({used_seed, residual});
    }
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace coherence
