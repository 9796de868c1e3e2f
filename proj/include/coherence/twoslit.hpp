#pragma once

#include <cmath>
#include <numbers>

#include "coherence/coherence.hpp"
#include "coherence/random.hpp"

namespace coherence::twoslit {

/// Demo parameters. The defaults match configs/twoslit_default.json; all
/// quantitative demo thresholds are properties of this configuration.
struct TwoSlitConfig {
  int grid = 64;           // number of position cells
  int slit_separation = 16;  // distance between slit centers, in cells
  int slit_width = 4;        // cells per slit
  double mass = 1.0;         // particle mass in grid units
  double time = 40.0;        // propagation time to the screen
  bool polarizers = false;   // opposite tags on the two slits
  std::uint64_t seed = 0;    // sets a physically irrelevant global phase
};

/// Traces out a right-hand factor of dimension d2 (position-major ordering).
inline Matrixd partial_trace_right(const Matrixd& m, Eigen::Index d2) {
  const Eigen::Index d1 = m.rows() / d2;
  if (d1 * d2 != m.rows() || m.rows() != m.cols()) {
    throw ValidationError("partial_trace_right: dimension mismatch");
  }
  Matrixd out = Matrixd::Zero(d1, d1);
  for (Eigen::Index x = 0; x < d1; ++x) {
    for (Eigen::Index y = 0; y < d1; ++y) {
      for (Eigen::Index t = 0; t < d2; ++t) out(x, y) += m(x * d2 + t, y * d2 + t);
    }
  }
  return out;
}

/// Grid model of the two-slit experiment: a symmetric two-peak wave packet on
/// the slit screen, a dichotomic left/right position observable, and free
/// evolution under a periodic second-difference kinetic Hamiltonian. With
/// polarizers on, the slits imprint opposite tags and the spatial reduced
/// state loses its coherence.
class TwoSlitModel {
 public:
  static TwoSlitModel build(const TwoSlitConfig& cfg) {
    if (cfg.grid < 16) throw std::invalid_argument("two-slit: grid of at least 16 cells required");
    if (cfg.slit_width < 1 || cfg.slit_separation < 1 || cfg.time < 0.0 || cfg.mass <= 0.0) {
      throw std::invalid_argument("two-slit: nonpositive geometry parameter");
    }
    const int n = cfg.grid;
    const int left_start = n / 2 - cfg.slit_separation / 2 - cfg.slit_width / 2;
    const int right_start = n / 2 + cfg.slit_separation / 2 - cfg.slit_width / 2;
    if (left_start < 0 || right_start + cfg.slit_width > n) {
      throw std::invalid_argument("two-slit: slits fall outside the grid");
    }
    if (left_start + cfg.slit_width > right_start) {
      throw std::invalid_argument("two-slit: slits overlap");
    }
    if (left_start + cfg.slit_width > n / 2 || right_start < n / 2) {
      throw std::invalid_argument("two-slit: grid too small to separate the slits");
    }
    return TwoSlitModel(cfg, left_start, right_start);
  }

  const TwoSlitConfig& config() const { return cfg_; }
  int grid() const { return cfg_.grid; }
  bool polarized() const { return cfg_.polarizers; }
  Eigen::Index full_dim() const { return cfg_.polarizers ? 2 * cfg_.grid : cfg_.grid; }

  /// The state on the slit screen (position space, tensored with the tag
  /// factor when polarizers are on).
  const DensityMatrixd& full_state() const { return state_; }

  /// Spatial state with the polarization tag traced out.
  DensityMatrixd spatial_state() const {
    if (!cfg_.polarizers) return state_;
    return make_density(partial_trace_right(state_.matrix(), 2));
  }

  /// Dichotomic slit observable on position space: left half vs right half.
  const DiscreteObservabled& slit_observable() const { return slit_obs_; }

  /// Slit observable lifted to the full space (tensored with the tag identity).
  DiscreteObservabled full_slit_observable() const {
    if (!cfg_.polarizers) return slit_obs_;
    std::vector<std::pair<double, Matrixd>> pairs;
    for (Eigen::Index l = 0; l < slit_obs_.outcomes(); ++l) {
      pairs.emplace_back(slit_obs_.label(l), tensor_with_tag(slit_obs_.projector(l)));
    }
    return make_observable<double>(std::move(pairs));
  }

  /// Position-cell observable on the screen.
  DiscreteObservabled screen_observable() const {
    std::vector<std::pair<double, Matrixd>> pairs;
    for (int x = 0; x < cfg_.grid; ++x) {
      Matrixd p = Matrixd::Zero(cfg_.grid, cfg_.grid);
      p(x, x) = 1.0;
      pairs.emplace_back(static_cast<double>(x), std::move(p));
    }
    return make_observable<double>(std::move(pairs));
  }

  /// Free evolution operator on position space, exp(-i H t) with H the
  /// periodic second-difference kinetic Hamiltonian. Spectral exponentiation
  /// keeps it unitary to machine precision.
  const Matrixd& spatial_evolution() const { return evolution_; }

  Matrixd full_evolution() const {
    return cfg_.polarizers ? tensor_with_tag(evolution_) : evolution_;
  }

  /// Spatial fringe frequency of the two-source interference term,
  /// mass * separation / time in radians per cell.
  double fringe_frequency() const {
    return cfg_.time > 0.0 ? cfg_.mass * cfg_.slit_separation / cfg_.time : 0.0;
  }

 private:
  TwoSlitModel(const TwoSlitConfig& cfg, int left_start, int right_start)
      : cfg_(cfg),
        slit_obs_(build_slit_observable(cfg.grid)),
        evolution_(build_evolution(cfg)),
        state_(build_state(cfg, left_start, right_start)) {}

  Matrixd tensor_with_tag(const Matrixd& m) const {
    Matrixd out = Matrixd::Zero(2 * m.rows(), 2 * m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        out(2 * i, 2 * j) = m(i, j);
        out(2 * i + 1, 2 * j + 1) = m(i, j);
      }
    }
    return out;
  }

  static DiscreteObservabled build_slit_observable(int n) {
    Matrixd left = Matrixd::Zero(n, n);
    Matrixd right = Matrixd::Zero(n, n);
    for (int x = 0; x < n; ++x) (x < n / 2 ? left : right)(x, x) = 1.0;
    return make_observable<double>({{0.0, left}, {1.0, right}});
  }

  static Matrixd build_evolution(const TwoSlitConfig& cfg) {
    const int n = cfg.grid;
    Matrixd h = Matrixd::Zero(n, n);
    const double k = 1.0 / (2.0 * cfg.mass);
    for (int x = 0; x < n; ++x) {
      h(x, x) = 2.0 * k;
      h(x, (x + 1) % n) = -k;
      h((x + 1) % n, x) = -k;
    }
    const auto es = detail::solve_hermitian(h);
    Vectord phases(n);
    for (int i = 0; i < n; ++i) {
      phases(i) = std::exp(Complexd(0.0, -es.eigenvalues()(i) * cfg.time));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  }

  static DensityMatrixd build_state(const TwoSlitConfig& cfg, int left_start, int right_start) {
    const int n = cfg.grid;
    const double sigma = std::max(1.0, cfg.slit_width / 3.0);
    auto packet = [&](int start) {
      Vectord psi = Vectord::Zero(n);
      const double center = start + (cfg.slit_width - 1) / 2.0;
      for (int x = start; x < start + cfg.slit_width; ++x) {
        psi(x) = std::exp(-(x - center) * (x - center) / (2.0 * sigma * sigma));
      }
      return psi;
    };
    const Vectord left = packet(left_start);
    const Vectord right = packet(right_start);

    // The seed fixes only a global phase; every observable quantity is
    // seed-independent.
    const double theta =
        2.0 * std::numbers::pi * (static_cast<double>(splitmix64(cfg.seed) >> 11) * 0x1.0p-53);
    const Complexd phase = std::exp(Complexd(0.0, theta));

    Vectord psi;
    if (cfg.polarizers) {
      psi = Vectord::Zero(2 * n);
      for (int x = 0; x < n; ++x) {
        psi(2 * x) = left(x);       // left slit carries tag 0
        psi(2 * x + 1) = right(x);  // right slit carries tag 1
      }
    } else {
      psi = left + right;
    }
    psi *= phase / psi.norm();
    return make_density(psi * psi.adjoint());
  }

  TwoSlitConfig cfg_;
  DiscreteObservabled slit_obs_;
  Matrixd evolution_;
  DensityMatrixd state_;
};

enum class PatternSource { coherent, luders };

/// Probability over screen cells: the diagonal of U X U^dagger in the
/// position basis, with X the state itself or its pinching under the slit
/// observable, and the polarization tag traced out.
inline RealVectord screen_pattern(const TwoSlitModel& model, PatternSource source) {
  const DensityMatrixd x = source == PatternSource::coherent
                               ? model.full_state()
                               : luders_state(model.full_slit_observable(), model.full_state());
  const Matrixd u = model.full_evolution();
  Matrixd evolved = u * x.matrix() * u.adjoint();
  if (model.polarized()) evolved = partial_trace_right(evolved, 2);
  return evolved.diagonal().real().cwiseMax(0.0);
}

struct FringeContrast {
  double l1_gap = 0.0;      // total variation between the two patterns
  double modulation = 0.0;  // Fourier magnitude of the difference at the fringe frequency
};

/// Compares a coherent pattern against a pinched one. The modulation probes
/// the pattern difference at the model's slit-separation fringe frequency,
/// normalized by the total intensity.
inline FringeContrast fringe_contrast(const TwoSlitModel& model, const RealVectord& coherent,
                                      const RealVectord& luders) {
  if (coherent.size() != luders.size()) {
    throw ValidationError("fringe_contrast: pattern length mismatch");
  }
  FringeContrast out;
  out.l1_gap = (coherent - luders).lpNorm<1>();
  const double q = model.fringe_frequency();
  Complexd component(0.0, 0.0);
  for (Eigen::Index x = 0; x < coherent.size(); ++x) {
    component += (coherent(x) - luders(x)) * std::exp(Complexd(0.0, -q * x));
  }
  const double total = coherent.sum();
  out.modulation = total > 0.0 ? std::abs(component) / total : 0.0;
  return out;
}

}  // namespace coherence::twoslit
