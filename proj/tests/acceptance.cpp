// Acceptance suite: end-to-end checks of the toolkit's headline guarantees,
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "coherence/twoslit.hpp"
#include "coherence/verify.hpp"

using namespace coherence;

namespace {

constexpr double ln2 = 0.6931471805599453;

int g_failures = 0;

void criterion(const char* name, bool ok, const std::string& details) {
  std::printf("[%s] %-28s %s\n", ok ? "PASS" : "FAIL", name, details.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Matrixd plus_state() {
  Matrixd m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

DiscreteObservabled sigma_z() {
  Matrixd up = Matrixd::Zero(2, 2);
  up(0, 0) = 1.0;
  Matrixd down = Matrixd::Zero(2, 2);
  down(1, 1) = 1.0;
  return make_observable<double>({{1.0, up}, {-1.0, down}});
}

char buf[256];

void qubit_benchmark() {
  // warm-up
  coherence_information(sigma_z(), make_density(plus_state()));

  double ic = 0.0;
  double rel = 0.0;
  const auto start = std::chrono::steady_clock::now();
  constexpr int reps = 100;
  for (int i = 0; i < reps; ++i) {
    const auto a = sigma_z();
    const auto rho = make_density(plus_state());
    ic = coherence_information(a, rho);
    rel = luders_distance(rho, a);
  }
  const double per_run_ms = 1000.0 * seconds_since(start) / reps;

  const bool ok = std::abs(ic - ln2) <= 1e-12 && std::abs(rel - ic) <= 1e-12 &&
                  std::abs(nats_to_bits(ic) - 1.0) <= 1e-12 && per_run_ms < 1.0;
  std::snprintf(buf, sizeof(buf),
                "I_C=%.15f (1 bit), |routes|=%.1e, %.3f ms/run", ic, std::abs(rel - ic),
                per_run_ms);
  criterion("qubit-benchmark", ok, buf);
}

void faithfulness() {
  int compat_bad = 0;
  int incompat_bad = 0;
  double worst_compat = 0.0;
  double worst_incompat = 1e300;
  const int per_population = 250;

  for (int t = 0; t < per_population; ++t) {
    const int dim = 2 + t % 7;
    Prng rng(derive_seed(4100, static_cast<std::uint64_t>(t)));
    // at least two outcomes: the identity observable is compatible with
    // every state, so no incompatible partner could exist for it
    const auto a = gen_observable(dim, rng.uniform_int(2, dim), derive_seed(4101, t));

    const auto compat = luders_state(a, gen_state(dim, dim, derive_seed(4102, t)));
    const double ic_compat = coherence_information(a, compat);
    worst_compat = std::max(worst_compat, ic_compat);
    if (!(ic_compat <= 1e-8) || !is_compatible(a, compat, 1e-6)) ++compat_bad;

    // incompatible population: redraw until the commutator is bounded away
    // from zero, so the draw is genuinely incompatible rather than borderline
    for (int attempt = 0;; ++attempt) {
      const auto rho =
          gen_state(dim, 1 + static_cast<int>(splitmix64(derive_seed(4103, t * 64 + attempt)) %
                                              static_cast<std::uint64_t>(dim)),
                    derive_seed(4104, t * 64 + attempt));
      double max_comm = 0.0;
      for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
        max_comm = std::max(max_comm, commutator_norm(a.projector(l), rho.matrix()));
      }
      if (max_comm < 0.05 && attempt < 63) continue;
      const double ic = coherence_information(a, rho);
      worst_incompat = std::min(worst_incompat, ic);
      if (!(ic > 1e-6) || is_compatible(a, rho, 1e-6)) ++incompat_bad;
      break;
    }
  }

  const bool ok = compat_bad == 0 && incompat_bad == 0;
  std::snprintf(buf, sizeof(buf),
                "%d pairs: compatible I_C <= %.1e, incompatible I_C >= %.3e, misclassified=%d",
                2 * per_population, worst_compat, worst_incompat, compat_bad + incompat_bad);
  criterion("faithfulness-classification", ok, buf);
}

void mixing_rel_entropy() {
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_suite("eq15", 200, 2, 8, 42, 1e-8);
  const double elapsed = seconds_since(start);
  const bool ok = report.passed && elapsed < 10.0;
  std::snprintf(buf, sizeof(buf), "200 trials, max residual %.3e, %.2f s", report.max_residual,
                elapsed);
  criterion("relative-entropy-mixing", ok, buf);
}

void coarsening_chain() {
  double max_residual = 0.0;
  double max_middle = 0.0;
  int monotonicity_violations = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const int dim = 2 + t % 7;
    Prng rng(derive_seed(4200, t));
    const auto a = gen_observable(dim, rng.uniform_int(2, dim), derive_seed(4201, t));
    const auto part = gen_partition(static_cast<int>(a.outcomes()),
                                    rng.uniform_int(1, static_cast<int>(a.outcomes())),
                                    derive_seed(4202, t));
    const auto rho = gen_state(dim, rng.uniform_int(1, dim), derive_seed(4203, t));
    const auto report = coherence_chain(a, part, rho);
    max_residual = std::max(max_residual, report.residual);
    max_middle = std::max(max_middle, report.middle_residual);
    if (report.coarse > report.total + 1e-10) ++monotonicity_violations;
  }
  const bool ok = max_residual <= 1e-8 && max_middle <= 1e-8 && monotonicity_violations == 0;
  std::snprintf(buf, sizeof(buf),
                "%d trials, chain residual %.3e, intermediate %.3e, monotonicity violations %d",
                trials, max_residual, max_middle, monotonicity_violations);
  criterion("coarsening-chain", ok, buf);
}

void incompatible_block_reduction() {
  const auto report = run_suite("prop3", 200, 4, 8, 42, 1e-8);
  std::snprintf(buf, sizeof(buf),
                "200 constructed three-class instances, max residual %.3e, redraws %d",
                report.max_residual, report.redraws);
  criterion("incompatible-reduction", report.passed, buf);
}

void entropy_decomposition_criterion() {
  double max_residual = 0.0;
  double max_cond_complete = 0.0;
  double max_ic_compatible = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const int dim = 2 + t % 7;
    Prng rng(derive_seed(4300, t));
    const auto a = gen_observable(dim, rng.uniform_int(1, dim), derive_seed(4301, t));
    const auto rho = gen_state(dim, rng.uniform_int(1, dim), derive_seed(4302, t));
    max_residual = std::max(max_residual, entropy_decomposition(a, rho).residual);

    const auto complete = gen_observable(dim, dim, derive_seed(4303, t));
    max_cond_complete =
        std::max(max_cond_complete, entropy_decomposition(complete, rho).conditional_entropy);

    const auto compat = luders_state(a, gen_state(dim, dim, derive_seed(4304, t)));
    max_ic_compatible =
        std::max(max_ic_compatible, entropy_decomposition(a, compat).coherence_info);
  }
  const bool ok =
      max_residual <= 1e-8 && max_cond_complete <= 1e-10 && max_ic_compatible <= 1e-10;
  std::snprintf(buf, sizeof(buf),
                "%d trials, residual %.3e, complete-case conditional %.3e, compatible-case I_C %.3e",
                trials, max_residual, max_cond_complete, max_ic_compatible);
  criterion("entropy-decomposition", ok, buf);
}

void corollaries_and_donald() {
  const auto c1 = run_suite("cor1", 200, 2, 8, 42, 1e-8);
  const auto c2 = run_suite("cor2", 200, 2, 8, 42, 1e-8);
  const auto dd = run_suite("donald", 200, 2, 8, 42, 1e-8);
  const bool ok = c1.passed && c2.passed && dd.passed;
  std::snprintf(buf, sizeof(buf),
                "200 trials each: distance %.3e, collinearity %.3e, donald %.3e",
                c1.max_residual, c2.max_residual, dd.max_residual);
  criterion("pinching-distance-identities", ok, buf);
}

void invariance_and_convexity() {
  const auto p4 = run_suite("prop4", 200, 2, 8, 42, 1e-9);
  const auto p5 = run_suite("prop5", 200, 2, 6, 42, 1e-9);
  const bool ok = p4.passed && p5.passed;
  std::snprintf(buf, sizeof(buf),
                "200 trials each: |delta I_C| under conjugation %.3e, convexity violation %.3e",
                p4.max_residual, p5.max_residual);
  criterion("invariance-and-convexity", ok, buf);
}

void equivalence_lemma() {
  // The suite checks all four predicates per trial (residual 1 on any
  // disagreement) and otherwise reports |witness gap - squared distance|,
  // so passing it at 1e-10 pins both halves of the criterion.
  const auto report = run_suite("lemma1", 200, 2, 8, 42, 1e-10);
  std::snprintf(buf, sizeof(buf),
                "200 mixed compatible/incompatible trials, max residual %.3e",
                report.max_residual);
  criterion("equivalence-lemma", report.passed, buf);
}

void skew_contrast_criterion() {
  double max_scale_residual = 0.0;
  int label_sensitive = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const int dim = 2 + t % 7;
    Prng rng(derive_seed(4500, t));
    const auto a = gen_observable(dim, rng.uniform_int(1, dim), derive_seed(4501, t));
    const auto rho = gen_state(dim, rng.uniform_int(1, dim), derive_seed(4502, t));
    const double p = rng.uniform(0.1, 0.9);
    const double c = rng.uniform(0.5, 3.0);

    std::vector<std::pair<double, Matrixd>> base;
    std::vector<std::pair<double, Matrixd>> scaled;
    for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
      base.emplace_back(a.label(l) + 1.0, a.projector(l));
      scaled.emplace_back(c * (a.label(l) + 1.0), a.projector(l));
    }
    const auto a_base = make_observable<double>(std::move(base));
    const auto a_scaled = make_observable<double>(std::move(scaled));

    max_scale_residual =
        std::max(max_scale_residual, std::abs(skew_information(rho, a_scaled, p) -
                                              c * c * skew_information(rho, a_base, p)));
    if (coherence_information(a_base, rho) != coherence_information(a_scaled, rho)) {
      ++label_sensitive;
    }
  }
  const bool ok = max_scale_residual <= 1e-9 && label_sensitive == 0;
  std::snprintf(buf, sizeof(buf),
                "%d trials, quadratic-scaling residual %.3e, I_C label drift in %d trials",
                trials, max_scale_residual, label_sensitive);
  criterion("skew-contrast", ok, buf);
}

void two_slit_demo() {
  namespace ts = coherence::twoslit;
  const auto start = std::chrono::steady_clock::now();

  const auto plain = ts::TwoSlitModel::build(ts::TwoSlitConfig{});
  const auto coherent = ts::screen_pattern(plain, ts::PatternSource::coherent);
  const auto pinched = ts::screen_pattern(plain, ts::PatternSource::luders);
  const auto contrast = ts::fringe_contrast(plain, coherent, pinched);

  ts::TwoSlitConfig tagged;
  tagged.polarizers = true;
  const auto pol = ts::TwoSlitModel::build(tagged);
  const auto pol_coherent = ts::screen_pattern(pol, ts::PatternSource::coherent);
  const auto pol_pinched = ts::screen_pattern(pol, ts::PatternSource::luders);
  const auto pol_contrast = ts::fringe_contrast(pol, pol_coherent, pol_pinched);

  double norm_err = 0.0;
  for (const auto* pattern : {&coherent, &pinched, &pol_coherent, &pol_pinched}) {
    norm_err = std::max(norm_err, std::abs(pattern->sum() - 1.0));
  }
  const double pol_equal = (pol_coherent - pol_pinched).cwiseAbs().maxCoeff();
  const double elapsed = seconds_since(start);

  const bool ok = contrast.modulation >= 10.0 * pol_contrast.modulation && pol_equal <= 1e-8 &&
                  norm_err <= 1e-10 && elapsed < 5.0;
  std::snprintf(buf, sizeof(buf),
                "modulation %.3f vs polarized %.1e, polarized pattern gap %.1e, "
                "normalization error %.1e, %.2f s",
                contrast.modulation, pol_contrast.modulation, pol_equal, norm_err, elapsed);
  criterion("two-slit-demo", ok, buf);
}

void full_sweep() {
  const auto start = std::chrono::steady_clock::now();
  int failed_suites = 0;
  double worst_margin = 0.0;
  for (const auto& name : suite_names()) {
    const auto report = run_suite(name, 200, 2, 8, 42);
    if (!report.passed) ++failed_suites;
    worst_margin = std::max(worst_margin, report.max_residual / report.tolerance);
  }
  const double elapsed = seconds_since(start);
  const bool ok = failed_suites == 0 && elapsed < 60.0;
  std::snprintf(buf, sizeof(buf),
                "16 suites x 200 trials, failed suites %d, worst residual/tolerance %.3f, %.1f s",
                failed_suites, worst_margin, elapsed);
  criterion("full-verification-sweep", ok, buf);
}

}  // namespace

int main() {
  qubit_benchmark();
  faithfulness();
  mixing_rel_entropy();
  coarsening_chain();
  incompatible_block_reduction();
  entropy_decomposition_criterion();
  corollaries_and_donald();
  invariance_and_convexity();
  equivalence_lemma();
  skew_contrast_criterion();
  two_slit_demo();
  full_sweep();

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
