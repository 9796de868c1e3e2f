#pragma once

#include <cstdint>
#include <numbers>

#include "coherence/qobj.hpp"

namespace coherence {

/// SplitMix64 finalizer; the basis of the counter-based per-trial seeding.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic per-trial seed derived from a master seed and an index.
/// Keeps failures replayable and trials independent without shared state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

/// Small deterministic generator with hand-rolled uniform/gaussian
/// conversions, so the same seed reproduces the same draws on any platform.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t bits() {
    state_ = splitmix64(state_);
    return state_;
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    const double u1 = 1.0 - uniform();  // keep away from log(0)
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_gaussian() {
    return {gaussian() * std::numbers::sqrt2 / 2.0, gaussian() * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::uint64_t state_;
};

/// Ginibre matrix of iid standard complex Gaussians.
inline Matrixd gen_ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Prng rng(seed);
  Matrixd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.complex_gaussian();
  }
  return g;
}

/// Random state of the given rank: rho = G G^dagger / tr(G G^dagger) with G a
/// dim x rank Ginibre matrix. Deterministic per seed.
inline DensityMatrixd gen_state(int dim, int rank, std::uint64_t seed) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw std::invalid_argument("gen_state: need 1 <= rank <= dim");
  }
  const Matrixd g = gen_ginibre(dim, rank, seed);
  Matrixd w = g * g.adjoint();
  w /= w.real().trace();
  return make_density(w);
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the column phases
/// fixed so the R diagonal is positive.
inline Matrixd gen_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("gen_unitary: dim >= 1 required");
  const Matrixd g = gen_ginibre(dim, dim, seed);
  Eigen::HouseholderQR<Matrixd> qr(g);
  Matrixd q = qr.householderQ() * Matrixd::Identity(dim, dim);
  const Matrixd r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

namespace detail {

/// Random composition of dim into n_blocks positive parts.
inline std::vector<int> gen_block_sizes(int dim, int n_blocks, Prng& rng) {
  std::vector<int> cuts;
  std::vector<char> taken(static_cast<size_t>(dim), 0);
  while (static_cast<int>(cuts.size()) < n_blocks - 1) {
    const int c = rng.uniform_int(1, dim - 1);
    if (!taken[static_cast<size_t>(c)]) {
      taken[static_cast<size_t>(c)] = 1;
      cuts.push_back(c);
    }
  }
  cuts.push_back(0);
  cuts.push_back(dim);
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> sizes;
  for (size_t i = 1; i < cuts.size(); ++i) sizes.push_back(cuts[i] - cuts[i - 1]);
  return sizes;
}

}  // namespace detail

/// Random observable with n_blocks outcomes: a random diagonal block
/// structure (random ranks summing to dim) conjugated by a Haar unitary.
/// Labels are 0, 1, ..., n_blocks - 1.
inline DiscreteObservabled gen_observable(int dim, int n_blocks, std::uint64_t seed) {
  if (n_blocks < 1 || n_blocks > dim) {
    throw std::invalid_argument("gen_observable: need 1 <= n_blocks <= dim");
  }
  Prng rng(derive_seed(seed, 1));
  const std::vector<int> sizes = detail::gen_block_sizes(dim, n_blocks, rng);
  const Matrixd u = gen_unitary(dim, derive_seed(seed, 2));
  std::vector<std::pair<double, Matrixd>> pairs;
  int offset = 0;
  for (size_t m = 0; m < sizes.size(); ++m) {
    const auto cols = u.middleCols(offset, sizes[m]);
    pairs.emplace_back(static_cast<double>(m), cols * cols.adjoint());
    offset += sizes[m];
  }
  return make_observable<double>(std::move(pairs));
}

/// Random surjective partition of {0..n-1} into m classes.
inline Partition gen_partition(int n, int m, std::uint64_t seed) {
  if (m < 1 || m > n) throw std::invalid_argument("gen_partition: need 1 <= m <= n");
  Prng rng(seed);
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<size_t>(i)],
                                            order[static_cast<size_t>(rng.uniform_int(0, i))]);
  std::vector<std::vector<int>> classes(static_cast<size_t>(m));
  for (int i = 0; i < n; ++i) {
    const int cls = i < m ? i : rng.uniform_int(0, m - 1);
    classes[static_cast<size_t>(cls)].push_back(order[static_cast<size_t>(i)]);
  }
  return Partition(std::move(classes), n);
}

/// Random probability vector (flat Dirichlet via normalized exponentials).
inline ProbabilityVectord gen_prob_vector(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_prob_vector: n >= 1 required");
  Prng rng(seed);
  RealVectord w(n);
  for (int i = 0; i < n; ++i) w(i) = -std::log(1.0 - rng.uniform());
  w /= w.sum();
  return ProbabilityVectord(std::move(w));
}

}  // namespace coherence
